#include "stccpm/receiver/bank.hpp"

#include "stccpm/error.hpp"

#include <deque>
#include <map>
#include <tuple>

namespace stccpm {

namespace {

constexpr std::size_t kMaxStates = 1u << 16;

using StateKey = std::tuple<Rational, Rational, std::vector<int>>;
using BaseKey = std::vector<std::tuple<Rational, int, int, int>>;

BaseKey base_key(const SlotPhase& phase) {
    BaseKey key;
    key.reserve(phase.terms().size());
    for (const auto& t : phase.terms()) {
        key.emplace_back(t.coef, static_cast<int>(t.pulse.shape()), t.pulse.length(), t.lag);
    }
    return key;
}

}  // namespace

CandidateBank::CandidateBank(const CodeScheme& scheme, const CpmParams& params, BankOptions options)
    : scheme_(scheme), params_(params), alphabet_(Alphabet::standard(params.M)) {
    params_.validate();
    if (scheme_.n_tx() == 2 && !scheme_.claims_orthogonal()) {
        throw ConstructionError("scheme '" + scheme_.name() +
                                "' is not orthogonal; the correlation receiver does not apply");
    }
    joint_ = !scheme_.separable() || options.force_joint;
    const int M = params_.M;
    const int g = params_.gamma;
    branches_ = joint_ ? M * M : M;
    const int n_tx = scheme_.n_tx();
    const double amplitude = antenna_amplitude(params_, n_tx);

    std::map<StateKey, int> state_ids;
    std::array<std::map<BaseKey, int>, 2> base_ids;
    std::array<std::array<std::vector<char>, 2>, 2> in_slot;

    auto intern = [&](const TrellisState& st) {
        StateKey key{st.theta[0], st.theta[1], st.history};
        auto it = state_ids.find(key);
        if (it != state_ids.end()) return it->second;
        if (states_.size() >= kMaxStates) {
            throw ConstructionError("phase-state set is not finite (more than " + std::to_string(kMaxStates) +
                                    " trellis states)");
        }
        const int id = static_cast<int>(states_.size());
        states_.push_back(st);
        state_ids.emplace(std::move(key), id);
        return id;
    };
    auto base_of = [&](int m, int slot, const SlotPhase& phase) {
        auto key = base_key(phase);
        auto& ids = base_ids[static_cast<std::size_t>(m)];
        auto it = ids.find(key);
        int id = 0;
        if (it != ids.end()) {
            id = it->second;
        } else {
            id = static_cast<int>(bases_[m].size());
            bases_[m].push_back(slot_base(phase, params_, amplitude));
            ids.emplace(std::move(key), id);
        }
        auto& used = in_slot[m][slot];
        if (used.size() <= static_cast<std::size_t>(id)) used.resize(static_cast<std::size_t>(id) + 1, 0);
        used[static_cast<std::size_t>(id)] = 1;
        return id;
    };
    auto symbol = [&](int index) { return index == M ? Rational(0) : alphabet_[index]; };

    TrellisState start;
    start.history.assign(static_cast<std::size_t>(g - 1), M);
    intern(start);

    std::deque<int> queue{0};
    std::vector<char> expanded;
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(s) < expanded.size() && expanded[static_cast<std::size_t>(s)]) continue;
        if (expanded.size() <= static_cast<std::size_t>(s)) expanded.resize(static_cast<std::size_t>(s) + 1, 0);
        expanded[static_cast<std::size_t>(s)] = 1;
        if (transitions_.size() < (static_cast<std::size_t>(s) + 1) * static_cast<std::size_t>(branches_)) {
            transitions_.resize((static_cast<std::size_t>(s) + 1) * static_cast<std::size_t>(branches_));
        }
        const TrellisState st = states_[static_cast<std::size_t>(s)];

        for (int b = 0; b < branches_; ++b) {
            Transition tr;
            TrellisState next;
            std::vector<int> window(st.history);
            if (joint_) {
                window.push_back(b / M);
                window.push_back(b % M);
                std::vector<Rational> ctx;
                for (int i : window) ctx.push_back(symbol(i));
                const DataBlock block = map_block(scheme_, params_, ctx, 0);
                for (int m = 0; m < n_tx; ++m) {
                    Rational theta = st.theta[m];
                    for (int r = 0; r < 2; ++r) {
                        const SlotPhase phase = slot_phase(scheme_, params_, block, m, r);
                        tr.slots[m][r] = {base_of(m, r, phase), phasor(theta)};
                        theta = update_theta(theta, xi(scheme_, params_, block, m, r));
                    }
                    next.theta[m] = theta;
                }
            } else {
                window.push_back(b);
                std::vector<Rational> ctx;
                for (int i : window) ctx.push_back(symbol(i));
                std::vector<Rational> first(ctx);
                first.push_back(Rational(0));
                std::vector<Rational> second{Rational(0)};
                second.insert(second.end(), ctx.begin(), ctx.end());
                const DataBlock b0 = map_block(scheme_, params_, first, 0);
                const DataBlock b1 = map_block(scheme_, params_, second, 0);
                for (int m = 0; m < n_tx; ++m) {
                    const SlotPhase phase = slot_phase(scheme_, params_, b0, m, 0);
                    const Rational x = xi(scheme_, params_, b0, m, 0);
                    const auto key = base_key(phase);
                    for (int later = 0; later < M; ++later) {
                        first.back() = alphabet_[later];
                        const DataBlock alt = map_block(scheme_, params_, first, 0);
                        if (base_key(slot_phase(scheme_, params_, alt, m, 0)) != key ||
                            xi(scheme_, params_, alt, m, 0) != x) {
                            throw ConstructionError("slot signal of '" + scheme_.name() +
                                                    "' depends on a symbol that has not been sent yet");
                        }
                    }
                    first.back() = Rational(0);
                    if (base_key(slot_phase(scheme_, params_, b1, m, 1)) != key ||
                        xi(scheme_, params_, b1, m, 1) != x) {
                        throw ConstructionError("slot signals of '" + scheme_.name() +
                                                "' differ between the two slots of a block");
                    }
                    tr.slots[m][0] = {base_of(m, 0, phase), phasor(st.theta[m])};
                    next.theta[m] = update_theta(st.theta[m], x);
                }
            }
            next.history.assign(window.end() - (g - 1), window.end());
            tr.next = intern(next);
            transitions_[static_cast<std::size_t>(s * branches_ + b)] = tr;
            if (static_cast<std::size_t>(tr.next) >= expanded.size() || !expanded[static_cast<std::size_t>(tr.next)]) {
                queue.push_back(tr.next);
            }
        }
    }

    for (int m = 0; m < n_tx; ++m) {
        for (int slot = 0; slot < slots_per_stage(); ++slot) {
            const auto& used = in_slot[m][slot];
            for (std::size_t id = 0; id < used.size(); ++id) {
                if (used[id]) slot_bases_[m][slot].push_back(static_cast<int>(id));
            }
        }
    }

    // Prune states without predecessors until only the recurrent part is left.
    const std::size_t n = states_.size();
    is_recurrent_.assign(n, 1);
    std::vector<int> indegree(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        for (int b = 0; b < branches_; ++b) ++indegree[static_cast<std::size_t>(transition(static_cast<int>(s), b).next)];
    }
    std::vector<int> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (indegree[s] == 0) stack.push_back(static_cast<int>(s));
    }
    while (!stack.empty()) {
        const int s = stack.back();
        stack.pop_back();
        is_recurrent_[static_cast<std::size_t>(s)] = 0;
        for (int b = 0; b < branches_; ++b) {
            const auto t = static_cast<std::size_t>(transition(s, b).next);
            if (--indegree[t] == 0 && is_recurrent_[t]) stack.push_back(static_cast<int>(t));
        }
    }
    recurrent_ = 0;
    for (char c : is_recurrent_) recurrent_ += c;
}

std::array<int, 2> CandidateBank::branch_symbols(int branch) const {
    if (joint_) return {branch / params_.M, branch % params_.M};
    return {branch, -1};
}

int CandidateBank::branch_index(std::span<const int> symbols) const {
    if (static_cast<int>(symbols.size()) != symbols_per_branch()) {
        throw ParameterError("branch_index: wrong number of symbols");
    }
    return joint_ ? symbols[0] * params_.M + symbols[1] : symbols[0];
}

void CandidateBank::render(int s, int branch, int antenna, std::span<cplx> out) const {
    const auto L = static_cast<std::size_t>(params_.samples_per_symbol);
    if (out.size() != L * static_cast<std::size_t>(slots_per_stage())) {
        throw ParameterError("render: output span has the wrong length");
    }
    const Transition& tr = transition(s, branch);
    for (int j = 0; j < slots_per_stage(); ++j) {
        const SlotCandidate& c = tr.slots[antenna][j];
        rotate_into(c.rotation, base(antenna, c.base), out.subspan(static_cast<std::size_t>(j) * L, L));
    }
}

}  // namespace stccpm
