#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/phase.hpp"
#include "stccpm/rational.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace stccpm {

enum class CodeKind {
    conventional,  // single antenna reference
    parallel_l2,   // parallel data mapping, repetitive correction mapping
    wang_xia,      // crosswise data mapping with the Wang-Xia correction
    repetition,    // two antennas sending identical conventional CPM (not orthogonal)
};

enum class Mapping { none, parallel, crosswise, repetitive };

// Two equivalent ways of producing antenna 2 of the parallel code.
enum class ParallelRealization {
    correction,        // conventional data plus c_2r(t) = sum_k q(t + kT)
    shifted_alphabet,  // conventional CPM over the alphabet shifted by 1/h
};

struct CodeScheme {
    CodeKind kind = CodeKind::parallel_l2;
    Mapping data_mapping = Mapping::parallel;
    Mapping correction_mapping = Mapping::repetitive;
    ParallelRealization realization = ParallelRealization::correction;
    // Smoothing function of the Wang-Xia correction factor (q0).
    PulseShape q0 = PulseShape::lrc;

    int n_tx() const { return kind == CodeKind::conventional ? 1 : 2; }
    // Each slot signal depends on one new symbol only, so the block trellis
    // factors into two symbol stages.
    bool separable() const { return kind != CodeKind::wang_xia; }
    bool claims_orthogonal() const { return kind == CodeKind::parallel_l2 || kind == CodeKind::wang_xia; }
    std::string name() const;

    static CodeScheme conventional();
    static CodeScheme parallel_l2(ParallelRealization realization = ParallelRealization::correction);
    static CodeScheme wang_xia(PulseShape q0 = PulseShape::lrc);
    static CodeScheme repetition();
};

// Accepts conventional, parallel-l2, parallel-l2-alphabet, wang-xia, repetition.
CodeScheme parse_scheme(const std::string& name);

// Symbols feeding block l. ctx[j] = d_{2l+2-gamma+j}, so ctx[gamma-1] is d_{2l+1}
// and ctx[gamma] is d_{2l+2}; indices before the first symbol hold 0.
// D[m][r][lag] is the symbol on the pulse of antenna m in slot r that started
// lag slots before the slot (lag 0 is the pulse starting with the slot).
struct DataBlock {
    long l = 0;
    std::vector<Rational> ctx;
    std::array<std::array<std::vector<Rational>, 2>, 2> D;
};

// Throws ParameterError unless source holds exactly gamma + 1 symbols.
DataBlock map_block(const CodeScheme& scheme, const CpmParams& params, std::span<const Rational> source,
                    long l);

// Recovers (d_{2l+1}, d_{2l+2}) from the data matrices.
std::array<Rational, 2> unmap_block(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block);

// Parallel-code correction of antenna 2 at absolute time t in slot (2l + r).
// r is 1 or 2. Throws ParameterError if t lies outside the slot.
double correction_parallel(double t, long l, int r, const CpmParams& params);

// Wang-Xia correction of antenna 2 at absolute time t in slot (2l + r).
double correction_wangxia(double t, long l, int r, std::span<const Rational> ctx, const CpmParams& params,
                          PulseShape q0);

// Phase of antenna m (0-based) in slot r (0-based) without phase memory.
SlotPhase slot_phase(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block, int m, int r);

// Phase-memory increment xi_m(2l + r + 1) (r 0-based) that keeps the phase of
// antenna m continuous from slot r into the following slot. For the second slot
// the next block's new symbols are not known and are taken as 0.
// Throws ConstructionError if the boundary phases are not rational.
Rational xi(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block, int m, int r);

// Next block's context with its new symbols zeroed.
std::vector<Rational> next_context(std::span<const Rational> ctx);

}  // namespace stccpm
