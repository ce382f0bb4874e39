#include "stccpm/cpm/alphabet.hpp"
#include "stccpm/error.hpp"
#include "stccpm/stc/encoder.hpp"
#include "stccpm/stc/orthogonality.hpp"
#include "stccpm/stc/scheme.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stccpm;
using stccpm::tsupport::reference_params;

namespace {

std::vector<Rational> random_ctx(std::mt19937_64& rng, const CpmParams& p) {
    const auto a = Alphabet::standard(p.M);
    std::vector<Rational> ctx;
    for (int i : tsupport::random_indices(rng, p.M, static_cast<std::size_t>(p.gamma + 1))) ctx.push_back(a[i]);
    return ctx;
}

EncoderState random_state(std::mt19937_64& rng, const CpmParams& p) {
    EncoderState s = EncoderState::initial(p);
    std::uniform_int_distribution<long> g(0, 2L * p.p - 1);
    const auto a = Alphabet::standard(p.M);
    s.theta = {Rational(g(rng), 2L * p.p), Rational(g(rng), 2L * p.p)};
    for (auto& t : s.tail) t = a[static_cast<int>(g(rng) % p.M)];
    return s;
}

}  // namespace

TEST(MapBlock, ParallelFullResponse) {
    auto p = reference_params();
    p.gamma = 1;
    const std::vector<Rational> src{Rational(3), Rational(-5)};
    const auto b = map_block(CodeScheme::parallel_l2(), p, src, 0);
    for (int m = 0; m < 2; ++m) {
        EXPECT_EQ(b.D[m][0][0], Rational(3));
        EXPECT_EQ(b.D[m][1][0], Rational(-5));
    }
}

TEST(MapBlock, WangXiaFullResponseIsCrosswise) {
    auto p = reference_params();
    p.gamma = 1;
    const std::vector<Rational> src{Rational(3), Rational(-5)};
    const auto b = map_block(CodeScheme::wang_xia(), p, src, 0);
    EXPECT_EQ(b.D[0][0][0], Rational(3));
    EXPECT_EQ(b.D[0][1][0], Rational(-5));
    EXPECT_EQ(b.D[1][0][0], Rational(5));
    EXPECT_EQ(b.D[1][1][0], Rational(-3));
}

TEST(MapBlock, ParallelPartialResponseWindowsAgree) {
    const auto p = reference_params();
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const auto ctx = random_ctx(rng, p);
        const auto b = map_block(CodeScheme::parallel_l2(), p, ctx, trial);
        for (int r = 0; r < 2; ++r) {
            for (int k = 0; k < p.gamma; ++k) {
                EXPECT_EQ(b.D[0][r][k], b.D[1][r][k]);
                EXPECT_EQ(b.D[0][r][k], ctx[static_cast<std::size_t>(p.gamma - 1 + r - k)]);
            }
        }
        // The second slot continues the first one by one symbol.
        for (int k = 1; k < p.gamma; ++k) EXPECT_EQ(b.D[0][1][k], b.D[0][0][k - 1]);
    }
}

TEST(MapBlock, WangXiaPartialResponseWindows) {
    const auto p = reference_params();
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto ctx = random_ctx(rng, p);
        const auto b = map_block(CodeScheme::wang_xia(), p, ctx, trial);
        for (int k = 0; k < p.gamma; ++k) {
            EXPECT_EQ(b.D[1][0][k], -ctx[static_cast<std::size_t>(p.gamma - k)]);
            EXPECT_EQ(b.D[1][1][k], -ctx[static_cast<std::size_t>(p.gamma - 1 - k)]);
        }
    }
}

TEST(MapBlock, InsufficientHistoryThrows) {
    const auto p = reference_params();
    const std::vector<Rational> src{Rational(1), Rational(3)};
    EXPECT_THROW(map_block(CodeScheme::parallel_l2(), p, src, 0), ParameterError);
}

TEST(MapBlock, RoundTrip) {
    const auto p = reference_params();
    std::mt19937_64 rng(3);
    for (const auto& scheme : {CodeScheme::conventional(), CodeScheme::parallel_l2(), CodeScheme::wang_xia()}) {
        for (int trial = 0; trial < 300; ++trial) {
            const auto ctx = random_ctx(rng, p);
            const auto back = unmap_block(scheme, p, map_block(scheme, p, ctx, 0));
            EXPECT_EQ(back[0], ctx[static_cast<std::size_t>(p.gamma - 1)]);
            EXPECT_EQ(back[1], ctx[static_cast<std::size_t>(p.gamma)]);
        }
    }
}

TEST(CorrectionParallel, FreshTermStartsAtZero) {
    auto p = reference_params();
    p.gamma = 1;
    EXPECT_DOUBLE_EQ(correction_parallel(4.0, 2, 1, p), 0.0);
    EXPECT_DOUBLE_EQ(correction_parallel(5.0, 2, 1, p), 0.5);
}

TEST(CorrectionParallel, OutsideSlotThrows) {
    const auto p = reference_params();
    EXPECT_THROW(correction_parallel(3.5, 2, 1, p), ParameterError);
    EXPECT_THROW(correction_parallel(4.5, 2, 2, p), ParameterError);
    EXPECT_THROW(correction_parallel(4.5, 2, 3, p), ParameterError);
}

TEST(CorrectionParallel, EndpointDifferenceIsHalfCycle) {
    for (int gamma = 1; gamma <= 4; ++gamma) {
        auto p = reference_params();
        p.gamma = gamma;
        const long l = 3;
        const double start = (2.0 * l + 1) * p.T;
        const double diff = correction_parallel(start + p.T, l, 2, p) - correction_parallel(start, l, 2, p);
        EXPECT_NEAR(diff - std::floor(diff), 0.5, 1e-15) << "gamma " << gamma;
    }
}

TEST(CorrectionWangXia, ZeroDataIsPlainRamp) {
    auto p = reference_params();
    p.gamma = 1;
    const std::vector<Rational> ctx{Rational(0), Rational(0)};
    for (PulseShape q0 : {PulseShape::lrec, PulseShape::lrc}) {
        for (int k = 0; k <= 10; ++k) {
            const double tau = k * 0.1;
            EXPECT_NEAR(correction_wangxia(2.0 + tau, 1, 1, ctx, p, q0), tsupport::ref_q(q0, tau, 1, 1.0), 1e-15);
        }
        EXPECT_NEAR(correction_wangxia(3.0, 1, 1, ctx, p, q0), 0.5, 1e-15);
    }
}

TEST(CorrectionWangXia, CoefficientArithmetic) {
    auto p = reference_params();
    p.gamma = 1;
    const std::vector<Rational> ctx{Rational(1), Rational(1)};
    for (int k = 0; k <= 10; ++k) {
        const double tau = k * 0.1;
        EXPECT_NEAR(correction_wangxia(3.0 + tau, 1, 2, ctx, p, PulseShape::lrec), 2.0 * q_rec(tau, 1), 1e-15);
    }
}

TEST(CorrectionWangXia, MissingHistoryThrows) {
    const auto p = reference_params();
    const std::vector<Rational> ctx{Rational(1), Rational(1)};
    EXPECT_THROW(correction_wangxia(0.5, 0, 1, ctx, p, PulseShape::lrc), ParameterError);
}

TEST(Xi, ConventionalAndParallelAntennaOne) {
    const auto p = reference_params();
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto ctx = random_ctx(rng, p);
        const Rational expect = p.h() / Rational(2) * ctx[static_cast<std::size_t>(0)];
        EXPECT_EQ(xi(CodeScheme::conventional(), p, map_block(CodeScheme::conventional(), p, ctx, 0), 0, 0), expect);
        EXPECT_EQ(xi(CodeScheme::parallel_l2(), p, map_block(CodeScheme::parallel_l2(), p, ctx, 0), 0, 0), expect);
    }
}

TEST(Xi, ParallelDifferenceIsHalfForEveryContext) {
    const auto p = reference_params();
    const auto a = Alphabet::standard(p.M);
    const auto scheme = CodeScheme::parallel_l2();
    int count = 0;
    for (int i = 0; i < p.M; ++i) {
        for (int j = 0; j < p.M; ++j) {
            for (int k = 0; k < p.M; ++k) {
                const std::vector<Rational> ctx{a[i], a[j], a[k]};
                const auto block = map_block(scheme, p, ctx, 0);
                EXPECT_EQ(xi_difference(scheme, p, block), Rational(1, 2));
                EXPECT_TRUE(check_xi_condition(scheme, p, block));
                ++count;
            }
        }
    }
    EXPECT_EQ(count, 512);
}

TEST(Xi, RepetitionFailsCondition) {
    const auto p = reference_params();
    std::mt19937_64 rng(5);
    const auto scheme = CodeScheme::repetition();
    for (int trial = 0; trial < 100; ++trial) {
        const auto block = map_block(scheme, p, random_ctx(rng, p), 0);
        EXPECT_EQ(xi_difference(scheme, p, block), Rational(0));
        EXPECT_FALSE(check_xi_condition(scheme, p, block));
    }
}

TEST(Xi, WangXiaMeetsCondition) {
    const auto p = reference_params();
    std::mt19937_64 rng(6);
    for (PulseShape q0 : {PulseShape::lrc, PulseShape::lrec}) {
        const auto scheme = CodeScheme::wang_xia(q0);
        for (int trial = 0; trial < 500; ++trial) {
            EXPECT_TRUE(check_xi_condition(scheme, p, map_block(scheme, p, random_ctx(rng, p), 0)));
        }
    }
}

TEST(Xi, IrrationalBoundaryPhaseIsRejected) {
    auto p = reference_params();
    p.gamma = 3;
    const std::vector<Rational> ctx(4, Rational(1));
    const auto scheme = CodeScheme::wang_xia(PulseShape::lrc);
    EXPECT_THROW(xi(scheme, p, map_block(scheme, p, ctx, 0), 1, 0), ConstructionError);
}

TEST(EncodeBlock, ZeroDataWithoutCorrectionIsConstant) {
    const auto p = reference_params();
    const auto [block, next] = encode_block(CodeScheme::repetition(), p, EncoderState::initial(p), Rational(0),
                                            Rational(0));
    for (int m = 0; m < 2; ++m) {
        for (const auto& s : block.samples[m]) {
            EXPECT_DOUBLE_EQ(s.real(), std::sqrt(0.5));
            EXPECT_DOUBLE_EQ(s.imag(), 0.0);
        }
    }
    EXPECT_EQ(next.theta[0], Rational(0));
}

TEST(EncodeBlock, ParallelAntennaOneIsConventional) {
    auto p = reference_params();
    std::mt19937_64 rng(7);
    const auto idx = tsupport::random_indices(rng, p.M, 2000);
    const auto conv = encode_frame(CodeScheme::conventional(), p, idx);
    const auto par = encode_frame(CodeScheme::parallel_l2(), p, idx);
    const double scale = std::sqrt(0.5);
    for (std::size_t b = 0; b < conv.size(); ++b) {
        for (std::size_t k = 0; k < conv[b].samples[0].size(); ++k) {
            ASSERT_NEAR(std::abs(conv[b].samples[0][k] * scale - par[b].samples[0][k]), 0.0, 1e-15);
        }
    }
    p.power = PowerSplit::per_antenna;
    const auto conv2 = encode_frame(CodeScheme::conventional(), p, idx);
    const auto par2 = encode_frame(CodeScheme::parallel_l2(), p, idx);
    for (std::size_t b = 0; b < conv2.size(); ++b) ASSERT_EQ(conv2[b].samples[0], par2[b].samples[0]);
}

TEST(EncodeBlock, ParallelDualConstructionsAgree) {
    const auto p = reference_params();
    std::mt19937_64 rng(8);
    const auto idx = tsupport::random_indices(rng, p.M, 2000);
    const auto corr = encode_frame(CodeScheme::parallel_l2(), p, idx);
    const auto shifted = encode_frame(CodeScheme::parallel_l2(ParallelRealization::shifted_alphabet), p, idx);
    double worst = 0.0;
    for (std::size_t b = 0; b < corr.size(); ++b) {
        for (std::size_t k = 0; k < corr[b].samples[1].size(); ++k) {
            worst = std::max(worst, std::abs(corr[b].samples[1][k] - shifted[b].samples[1][k]));
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(EncodeBlock, ParallelAntennaTwoIsShiftedAlphabetCpm) {
    const auto p = reference_params();
    std::mt19937_64 rng(9);
    const auto idx = tsupport::random_indices(rng, p.M, 400);
    const auto frame = encode_frame(CodeScheme::parallel_l2(), p, idx);
    const auto a = Alphabet::standard(p.M);
    // h (d + 1/h) = h d + 1 for every symbol, including the zeros before the frame.
    std::vector<double> d;
    for (int i : idx) d.push_back(a[i].to_double());
    const auto phase = antenna_phase(frame, 1, p);
    for (std::size_t k = 0; k < phase.size(); ++k) {
        const double t = static_cast<double>(k) * p.dt();
        const double ref = tsupport::ref_phase(t, d, 0.5, 1.0, p.gamma, p.T, p.pulse, true);
        ASSERT_NEAR(tsupport::wrap(phase[k] - ref), 0.0, 1e-9) << "sample " << k;
    }
}

TEST(EncodeFrame, OddLengthThrows) {
    const auto p = reference_params();
    const std::vector<int> idx{1, 2, 3};
    EXPECT_THROW(encode_frame(CodeScheme::parallel_l2(), p, idx), ParameterError);
}

TEST(L2Residual, OrthogonalSchemesCancel) {
    const auto p = reference_params();
    std::mt19937_64 rng(10);
    for (const auto& scheme : {CodeScheme::parallel_l2(), CodeScheme::wang_xia(), CodeScheme::wang_xia(PulseShape::lrec)}) {
        const auto frame = encode_frame(scheme, p, tsupport::random_indices(rng, p.M, 2000));
        for (const auto& b : frame) ASSERT_LT(l2_residual(b, p), 1e-10 * p.Es) << scheme.name();
    }
}

TEST(L2Residual, RepetitionIsFullyCorrelated) {
    const auto p = reference_params();
    std::mt19937_64 rng(11);
    const auto frame = encode_frame(CodeScheme::repetition(), p, tsupport::random_indices(rng, p.M, 200));
    for (const auto& b : frame) EXPECT_NEAR(l2_residual(b, p), 2.0 * p.Es, 1e-12);
}

TEST(L2Residual, SingleAntennaThrows) {
    const auto p = reference_params();
    const auto frame = encode_frame(CodeScheme::conventional(), p, std::vector<int>{0, 1});
    EXPECT_THROW(l2_residual(frame[0], p), ParameterError);
}

TEST(L2Residual, AgreesWithDenseNumericalIntegration) {
    auto dense = reference_params();
    dense.samples_per_symbol = 4096;
    std::mt19937_64 rng(12);
    for (const auto& scheme : {CodeScheme::parallel_l2(), CodeScheme::wang_xia(), CodeScheme::repetition()}) {
        for (int trial = 0; trial < 40; ++trial) {
            const EncoderState s = random_state(rng, dense);
            const auto a = Alphabet::standard(dense.M);
            const auto pair = tsupport::random_indices(rng, dense.M, 2);
            const auto [block, next] = encode_block(scheme, dense, s, a[pair[0]], a[pair[1]]);
            // Midpoint rule on the phase functions themselves.
            cplx sum{0.0, 0.0};
            const int n = 4096;
            for (int r = 0; r < 2; ++r) {
                for (int k = 0; k < n; ++k) {
                    const double tau = (k + 0.5) / n;
                    const double d = block.theta[0][r].to_double() + block.phase[0][r](tau) -
                                     block.theta[1][r].to_double() - block.phase[1][r](tau);
                    sum += std::polar(1.0, 2.0 * M_PI * d) / static_cast<double>(n);
                }
            }
            EXPECT_NEAR(l2_residual(block, dense), std::abs(sum), 1e-6) << scheme.name();
        }
    }
}

TEST(Properties, OrthogonalityWithRandomInitialPhase) {
    const auto p = reference_params();
    std::mt19937_64 rng(13);
    const auto a = Alphabet::standard(p.M);
    for (const auto& scheme : {CodeScheme::parallel_l2(), CodeScheme::wang_xia()}) {
        for (int trial = 0; trial < 3000; ++trial) {
            const auto s = random_state(rng, p);
            const auto pair = tsupport::random_indices(rng, p.M, 2);
            const auto [block, next] = encode_block(scheme, p, s, a[pair[0]], a[pair[1]]);
            ASSERT_LT(l2_residual(block, p), 1e-10 * p.Es);
            ASSERT_TRUE(check_xi_condition(scheme, p, block.data));
        }
    }
}

TEST(Properties, ConditionMatchesResidual) {
    const auto p = reference_params();
    std::mt19937_64 rng(14);
    const auto a = Alphabet::standard(p.M);
    for (const auto& scheme : {CodeScheme::parallel_l2(), CodeScheme::wang_xia(), CodeScheme::wang_xia(PulseShape::lrec),
                               CodeScheme::repetition()}) {
        for (int trial = 0; trial < 500; ++trial) {
            const auto pair = tsupport::random_indices(rng, p.M, 2);
            const auto [block, next] = encode_block(scheme, p, random_state(rng, p), a[pair[0]], a[pair[1]]);
            const bool cond = check_xi_condition(scheme, p, block.data);
            const bool zero = l2_residual(block, p) < 1e-10;
            EXPECT_EQ(cond, zero) << scheme.name();
        }
    }
}

TEST(Properties, PhaseContinuityAllSchemes) {
    for (int gamma : {1, 2, 3}) {
        auto p = reference_params();
        p.gamma = gamma;
        std::mt19937_64 rng(15 + gamma);
        std::vector<CodeScheme> schemes{CodeScheme::conventional(), CodeScheme::parallel_l2(),
                                        CodeScheme::parallel_l2(ParallelRealization::shifted_alphabet),
                                        CodeScheme::repetition(), CodeScheme::wang_xia(PulseShape::lrec)};
        if (gamma <= 2) schemes.push_back(CodeScheme::wang_xia(PulseShape::lrc));
        for (const auto& scheme : schemes) {
            const auto frame = encode_frame(scheme, p, tsupport::random_indices(rng, p.M, 2000));
            EXPECT_LT(max_phase_jump(frame, p), 1e-12) << scheme.name() << " gamma " << gamma;
        }
    }
}

TEST(Properties, LinearWangXiaCorrectionCollapsesToParallel) {
    const auto p = reference_params();
    std::mt19937_64 rng(16);
    const auto idx = tsupport::random_indices(rng, p.M, 1000);
    const auto wx = encode_frame(CodeScheme::wang_xia(PulseShape::lrec), p, idx);
    const auto par = encode_frame(CodeScheme::parallel_l2(), p, idx);
    const auto wx_rc = encode_frame(CodeScheme::wang_xia(PulseShape::lrc), p, idx);
    double same = 0.0;
    double differ = 0.0;
    for (std::size_t b = 0; b < wx.size(); ++b) {
        for (std::size_t k = 0; k < wx[b].samples[1].size(); ++k) {
            same = std::max(same, std::abs(wx[b].samples[1][k] - par[b].samples[1][k]));
            differ = std::max(differ, std::abs(wx_rc[b].samples[1][k] - par[b].samples[1][k]));
        }
    }
    EXPECT_LT(same, 1e-12);
    EXPECT_GT(differ, 0.1);
}
