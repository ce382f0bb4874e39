#pragma once

#include "stccpm/cpm/alphabet.hpp"
#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/waveform.hpp"
#include "stccpm/rational.hpp"
#include "stccpm/stc/scheme.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace stccpm {

// Trellis node: phase memory of each antenna plus the last gamma - 1 symbol
// indices (oldest first). Index M stands for the zero symbol before the frame.
struct TrellisState {
    std::array<Rational, 2> theta{};
    std::vector<int> history;

    friend bool operator==(const TrellisState&, const TrellisState&) = default;
};

// One slot of one antenna along a branch: phasor(theta) * bases[base].
struct SlotCandidate {
    int base = -1;
    cplx rotation;
};

struct Transition {
    int next = -1;
    // [antenna][slot within the stage]
    std::array<std::array<SlotCandidate, 2>, 2> slots{};
};

struct BankOptions {
    // Decode separable schemes with the M^2 block trellis anyway.
    bool force_joint = false;
};

// Precomputed trellis and filterbank for one scheme. A stage is one slot with
// M branches per state when the scheme is separable and one code block with
// M^2 branches otherwise. Immutable once built and shared between decoders.
class CandidateBank {
public:
    // Throws ConstructionError if the phase-state set is not finite or a slot
    // signal would depend on a symbol that has not been sent yet.
    CandidateBank(const CodeScheme& scheme, const CpmParams& params, BankOptions options = {});

    const CodeScheme& scheme() const { return scheme_; }
    const CpmParams& params() const { return params_; }
    const Alphabet& alphabet() const { return alphabet_; }
    int n_tx() const { return scheme_.n_tx(); }

    bool joint() const { return joint_; }
    int slots_per_stage() const { return joint_ ? 2 : 1; }
    int stages_per_block() const { return joint_ ? 1 : 2; }
    int symbols_per_branch() const { return joint_ ? 2 : 1; }
    int branches() const { return branches_; }

    int num_states() const { return static_cast<int>(states_.size()); }
    // States visited infinitely often, i.e. the trellis after the start-up transient.
    int num_recurrent_states() const { return recurrent_; }
    // Recurrent (state, branch) pairs: the number of candidate slot signals per stage.
    int num_candidates() const { return recurrent_ * branches_; }
    int initial_state() const { return 0; }

    const TrellisState& state(int s) const { return states_[static_cast<std::size_t>(s)]; }
    bool recurrent(int s) const { return is_recurrent_[static_cast<std::size_t>(s)] != 0; }
    const Transition& transition(int s, int branch) const {
        return transitions_[static_cast<std::size_t>(s * branches_ + branch)];
    }

    // Phase-memory-free slot signals of one antenna, L samples each.
    int num_bases(int antenna) const { return static_cast<int>(bases_[static_cast<std::size_t>(antenna)].size()); }
    const std::vector<cplx>& base(int antenna, int id) const {
        return bases_[static_cast<std::size_t>(antenna)][static_cast<std::size_t>(id)];
    }
    // Bases that can occur in a given slot of a stage.
    const std::vector<int>& bases_in_slot(int antenna, int slot) const {
        return slot_bases_[static_cast<std::size_t>(antenna)][static_cast<std::size_t>(slot)];
    }

    // Symbol indices of a branch, first symbol first.
    std::array<int, 2> branch_symbols(int branch) const;
    int branch_index(std::span<const int> symbols) const;

    // Writes the stage signal of one antenna along a branch (slots_per_stage * L samples).
    void render(int s, int branch, int antenna, std::span<cplx> out) const;

private:
    CodeScheme scheme_;
    CpmParams params_;
    Alphabet alphabet_;
    bool joint_ = false;
    int branches_ = 0;
    int recurrent_ = 0;
    std::vector<TrellisState> states_;
    std::vector<char> is_recurrent_;
    std::vector<Transition> transitions_;
    std::array<std::vector<std::vector<cplx>>, 2> bases_;
    std::array<std::array<std::vector<int>, 2>, 2> slot_bases_;
};

}  // namespace stccpm
