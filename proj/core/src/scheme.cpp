#include "stccpm/stc/scheme.hpp"

#include "stccpm/error.hpp"

namespace stccpm {

std::string CodeScheme::name() const {
    switch (kind) {
        case CodeKind::conventional: return "conventional";
        case CodeKind::parallel_l2:
            return realization == ParallelRealization::correction ? "parallel-l2" : "parallel-l2-alphabet";
        case CodeKind::wang_xia: return "wang-xia";
        case CodeKind::repetition: return "repetition";
    }
    return "?";
}

CodeScheme CodeScheme::conventional() {
    CodeScheme s;
    s.kind = CodeKind::conventional;
    s.data_mapping = Mapping::none;
    s.correction_mapping = Mapping::none;
    return s;
}

CodeScheme CodeScheme::parallel_l2(ParallelRealization realization) {
    CodeScheme s;
    s.kind = CodeKind::parallel_l2;
    s.data_mapping = Mapping::parallel;
    s.correction_mapping = Mapping::repetitive;
    s.realization = realization;
    return s;
}

CodeScheme CodeScheme::wang_xia(PulseShape q0) {
    CodeScheme s;
    s.kind = CodeKind::wang_xia;
    s.data_mapping = Mapping::crosswise;
    s.correction_mapping = Mapping::repetitive;
    s.q0 = q0;
    return s;
}

CodeScheme CodeScheme::repetition() {
    CodeScheme s;
    s.kind = CodeKind::repetition;
    s.data_mapping = Mapping::parallel;
    s.correction_mapping = Mapping::none;
    return s;
}

CodeScheme parse_scheme(const std::string& name) {
    if (name == "conventional") return CodeScheme::conventional();
    if (name == "parallel-l2") return CodeScheme::parallel_l2();
    if (name == "parallel-l2-alphabet") return CodeScheme::parallel_l2(ParallelRealization::shifted_alphabet);
    if (name == "wang-xia") return CodeScheme::wang_xia();
    if (name == "repetition") return CodeScheme::repetition();
    throw ParameterError("unknown scheme '" + name + "'");
}

DataBlock map_block(const CodeScheme& scheme, const CpmParams& params, std::span<const Rational> source,
                    long l) {
    const int g = params.gamma;
    if (static_cast<int>(source.size()) != g + 1) {
        throw ParameterError("map_block: need gamma + 1 = " + std::to_string(g + 1) + " source symbols, got " +
                             std::to_string(source.size()));
    }
    DataBlock block;
    block.l = l;
    block.ctx.assign(source.begin(), source.end());
    auto d = [&](int j) { return block.ctx[static_cast<std::size_t>(j)]; };

    for (int m = 0; m < 2; ++m) {
        for (int r = 0; r < 2; ++r) block.D[m][r].assign(static_cast<std::size_t>(g), Rational(0));
    }
    // Conventional CPM order: the pulse with lag k in slot r carries d_{2l+1+r-k}.
    for (int r = 0; r < 2; ++r) {
        for (int k = 0; k < g; ++k) block.D[0][r][k] = d(g - 1 + r - k);
    }
    if (scheme.n_tx() == 1) return block;

    if (scheme.kind == CodeKind::wang_xia) {
        // Crosswise: slot 1 carries -d_{2l+2-k}, slot 2 carries -d_{2l+1-k}.
        for (int k = 0; k < g; ++k) {
            block.D[1][0][k] = -d(g - k);
            block.D[1][1][k] = -d(g - 1 - k);
        }
    } else {
        block.D[1] = block.D[0];
    }
    return block;
}

std::array<Rational, 2> unmap_block(const CodeScheme& scheme, const CpmParams&, const DataBlock& block) {
    if (scheme.kind == CodeKind::wang_xia) {
        return {-block.D[1][1][0], -block.D[1][0][0]};
    }
    return {block.D[0][0][0], block.D[0][1][0]};
}

namespace {

double slot_local(double t, long l, int r, const CpmParams& params) {
    if (r != 1 && r != 2) throw ParameterError("slot index r must be 1 or 2");
    const double start = (2.0 * static_cast<double>(l) + r - 1) * params.T;
    const double tau = t - start;
    const double eps = 1e-12 * params.T;
    if (tau < -eps || tau > params.T + eps) throw ParameterError("time lies outside the slot");
    return tau;
}

}  // namespace

double correction_parallel(double t, long l, int r, const CpmParams& params) {
    const double tau = slot_local(t, l, r, params);
    const PhaseSmoothing q(params.pulse, params.gamma, params.T);
    double c = 0.0;
    for (int k = 0; k < params.gamma; ++k) c += q(tau + k * params.T);
    return c;
}

double correction_wangxia(double t, long l, int r, std::span<const Rational> ctx, const CpmParams& params,
                          PulseShape q0) {
    const double tau = slot_local(t, l, r, params);
    const int g = params.gamma;
    if (static_cast<int>(ctx.size()) != g + 1) throw ParameterError("correction_wangxia: missing symbol history");
    const PhaseSmoothing q(q0, g, params.T);
    const double h = params.h_value();
    double c = 0.0;
    for (int k = 0; k < g; ++k) {
        const double pair = ctx[static_cast<std::size_t>(g - 1 - k)].to_double() +
                            ctx[static_cast<std::size_t>(g - k)].to_double();
        c += (h * pair + 1.0) * q(tau + k * params.T);
    }
    return c;
}

SlotPhase slot_phase(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block, int m, int r) {
    const int g = params.gamma;
    const Rational h = params.h();
    const PhaseSmoothing q(params.pulse, g, params.T);
    SlotPhase phase;

    const bool shifted = scheme.kind == CodeKind::parallel_l2 && m == 1 &&
                         scheme.realization == ParallelRealization::shifted_alphabet;
    for (int k = 0; k < g; ++k) {
        Rational coef = h * block.D[m][r][k];
        // h (d + 1/h) = h d + 1
        if (shifted) coef += Rational(1);
        phase.add(coef, q, k);
    }
    if (m == 0) return phase;

    if (scheme.kind == CodeKind::parallel_l2 && scheme.realization == ParallelRealization::correction) {
        for (int k = 0; k < g; ++k) phase.add(Rational(1), q, k);
    } else if (scheme.kind == CodeKind::wang_xia) {
        const PhaseSmoothing q0(scheme.q0, g, params.T);
        for (int k = 0; k < g; ++k) {
            const Rational pair = block.ctx[static_cast<std::size_t>(g - 1 - k)] + block.ctx[static_cast<std::size_t>(g - k)];
            phase.add(h * pair + Rational(1), q0, k);
        }
    }
    return phase;
}

std::vector<Rational> next_context(std::span<const Rational> ctx) {
    std::vector<Rational> next(ctx.size(), Rational(0));
    for (std::size_t j = 0; j + 2 < ctx.size(); ++j) next[j] = ctx[j + 2];
    return next;
}

Rational xi(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block, int m, int r) {
    const SlotPhase here = slot_phase(scheme, params, block, m, r);
    SlotPhase there;
    if (r == 0) {
        there = slot_phase(scheme, params, block, m, 1);
    } else {
        const auto next = next_context(block.ctx);
        there = slot_phase(scheme, params, map_block(scheme, params, next, block.l + 1), m, 0);
    }
    auto end = here.exact_end();
    auto start = there.exact_start();
    if (!end || !start) {
        throw ConstructionError("phase at a symbol boundary is not rational; the phase-state set is not finite");
    }
    return *end - *start;
}

}  // namespace stccpm
