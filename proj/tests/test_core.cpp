#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "scc/core.hpp"
#include "scc/rng.hpp"

using namespace scc;

namespace {

// Brute-force oracle: enumerate the 8 (T,U,V) subgroups with independent
// marginals and pour each into the table cell its outcome dictates.
ContingencyTable enumerate_table(const CauseProbabilities& c,
                                 bool (*outcome)(bool, bool, bool)) {
    double cells[4] = {0, 0, 0, 0}; // tp, fp, fn, tn
    for (int t = 0; t < 2; ++t) {
        for (int u = 0; u < 2; ++u) {
            for (int v = 0; v < 2; ++v) {
                const double mass = (t ? c.p_t : 1 - c.p_t) *
                                    (u ? c.p_u : 1 - c.p_u) *
                                    (v ? c.p_v : 1 - c.p_v);
                const bool d = outcome(t != 0, u != 0, v != 0);
                if (t && d) cells[0] += mass;
                if (t && !d) cells[1] += mass;
                if (!t && d) cells[2] += mass;
                if (!t && !d) cells[3] += mass;
            }
        }
    }
    return ContingencyTable(cells[0], cells[1], cells[2], cells[3]);
}

bool reference_outcome(bool t, bool u, bool v) { return (t || v) && u; }
bool symmetric_outcome(bool t, bool u, bool v) { return (t && v) || u; }

const std::array<double, 5> kGrid = {0.0, 0.25, 0.5, 0.75, 1.0};

} // namespace

TEST_CASE("contingency table validation and renormalization") {
    CHECK_THROWS_AS(ContingencyTable(0.5, 0.5, 0.5, 0.5), InvalidTable);
    CHECK_THROWS_AS(ContingencyTable(-0.1, 0.5, 0.3, 0.3), InvalidTable);
    CHECK_THROWS_AS(ContingencyTable(0.25, 0.25, 0.25, 0.23), InvalidTable);

    // drift below 1e-9 is repaired, exact input stays bit-identical
    const ContingencyTable drifted(0.25, 0.25, 0.25, 0.25 + 5e-10);
    CHECK(drifted.tp + drifted.fp + drifted.fn + drifted.tn ==
          doctest::Approx(1.0).epsilon(1e-15));
    const ContingencyTable exact(0.1875, 0.0625, 0.28125, 0.46875);
    CHECK(exact.tp == 0.1875);
    CHECK(exact.tn == 0.46875);
    CHECK(exact.positivity() == 0.25);
    CHECK(exact.prevalence() == 0.46875);
}

TEST_CASE("cause probability validation") {
    CHECK_THROWS_AS(CauseProbabilities(-0.1, 0.5, 0.5), InvalidProbability);
    CHECK_THROWS_AS(CauseProbabilities(0.5, 1.1, 0.5), InvalidProbability);
    CHECK(CauseProbabilities(0.0, 0.5, 0.5).degenerate());
    CHECK(CauseProbabilities(0.5, 1.0, 0.5).degenerate());
    CHECK_FALSE(CauseProbabilities(0.25, 0.75, 0.5).degenerate());
}

TEST_CASE("causes_to_table worked values") {
    const ContingencyTable t = causes_to_table({0.25, 0.75, 0.5});
    CHECK(t.tp == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(t.fp == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(t.fn == doctest::Approx(0.28125).epsilon(1e-15));
    CHECK(t.tn == doctest::Approx(0.46875).epsilon(1e-15));

    const ContingencyTable t2 = causes_to_table({1.0 / 3.0, 0.8, 2.0 / 3.0});
    CHECK(t2.tp == doctest::Approx(4.0 / 15.0).epsilon(1e-14));
    CHECK(t2.fp == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
    CHECK(t2.fn == doctest::Approx(16.0 / 45.0).epsilon(1e-14));
    CHECK(t2.tn == doctest::Approx(14.0 / 45.0).epsilon(1e-14));

    // no marker positives: everything rides on U and V
    const ContingencyTable t3 = causes_to_table({0.0, 0.6, 0.5});
    CHECK(t3.tp == 0.0);
    CHECK(t3.fp == 0.0);
    CHECK(t3.fn == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(t3.tn == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("table_to_causes worked values and errors") {
    const CauseProbabilities c =
        table_to_causes(ContingencyTable(0.1875, 0.0625, 0.28125, 0.46875));
    CHECK(c.p_t == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.p_u == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(c.p_v == doctest::Approx(0.5).epsilon(1e-15));

    // the accuracy-transport table of the worked example, in exact fractions
    const CauseProbabilities c2 = table_to_causes(
        ContingencyTable(56.0 / 225.0, 2.0 / 45.0, 84.0 / 225.0, 1.0 / 3.0));
    CHECK(c2.p_t == doctest::Approx(22.0 / 75.0).epsilon(1e-13));
    CHECK(c2.p_u == doctest::Approx(28.0 / 33.0).epsilon(1e-13));
    CHECK(c2.p_v == doctest::Approx(33.0 / 53.0).epsilon(1e-13));

    // perfect marker
    const CauseProbabilities c3 =
        table_to_causes(ContingencyTable(0.5, 0.0, 0.0, 0.5));
    CHECK(c3.p_t == 0.5);
    CHECK(c3.p_u == 1.0);
    CHECK(c3.p_v == 0.0);

    CHECK_THROWS_AS(table_to_causes(ContingencyTable(0.0, 0.0, 0.3, 0.7)),
                    DegenerateMarker);
    // fn > 0 while p_u = 0: no independent-cause population fits
    CHECK_THROWS_AS(table_to_causes(ContingencyTable(0.0, 0.3, 0.2, 0.5)),
                    DegenerateUniversalCause);
    // p_t = 1 leaves the P_V denominator empty
    CHECK_THROWS_AS(table_to_causes(ContingencyTable(0.7, 0.3, 0.0, 0.0)),
                    DegenerateUniversalCause);
    // fn too large for the recovered p_t, p_u: implied P_V > 1
    CHECK_THROWS_AS(table_to_causes(ContingencyTable(0.1, 0.1, 0.5, 0.3)),
                    DegenerateUniversalCause);
}

TEST_CASE("metrics worked values and undefined markers") {
    const PerformanceMetrics m =
        metrics(ContingencyTable(0.1875, 0.0625, 0.28125, 0.46875));
    CHECK(*m.se == doctest::Approx(0.400).epsilon(1e-12));
    CHECK(*m.sp == doctest::Approx(15.0 / 17.0).epsilon(1e-12));
    CHECK(*m.ppv == doctest::Approx(0.750).epsilon(1e-12));
    CHECK(*m.npv == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(m.prevalence == doctest::Approx(0.46875).epsilon(1e-15));

    const PerformanceMetrics m2 = metrics(
        ContingencyTable(4.0 / 15.0, 1.0 / 15.0, 16.0 / 45.0, 14.0 / 45.0));
    CHECK(*m2.se == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(*m2.sp == doctest::Approx(14.0 / 17.0).epsilon(1e-12));
    CHECK(*m2.ppv == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(*m2.npv == doctest::Approx(14.0 / 30.0).epsilon(1e-12));
    CHECK(m2.prevalence == doctest::Approx(28.0 / 45.0).epsilon(1e-14));

    const PerformanceMetrics m3 = metrics(ContingencyTable(0.5, 0.0, 0.0, 0.5));
    CHECK(*m3.se == 1.0);
    CHECK(*m3.sp == 1.0);
    CHECK(*m3.ppv == 1.0);
    CHECK(*m3.npv == 1.0);
    CHECK(m3.prevalence == 0.5);

    const PerformanceMetrics m4 = metrics(ContingencyTable(0.0, 0.0, 0.3, 0.7));
    CHECK_FALSE(m4.ppv.has_value());
    CHECK(m4.se.has_value());
    CHECK_THROWS_AS(require_metric(m4.ppv, "ppv"), UndefinedMetric);
}

TEST_CASE("prevalence_from_causes agrees with the table bit for bit") {
    CHECK(prevalence_from_causes({0.25, 0.75, 0.5}) == 0.46875);
    CHECK(prevalence_from_causes({0.7, 1.0, 1.0}) == 1.0);
    CHECK(prevalence_from_causes({1.0 / 3.0, 0.8, 2.0 / 3.0}) ==
          doctest::Approx(0.6222).epsilon(1e-4));

    rng::Xoshiro256PlusPlus gen(2026, 11);
    for (int i = 0; i < 2000; ++i) {
        const CauseProbabilities c(gen.uniform_open01(), gen.uniform_open01(),
                                   gen.uniform_open01());
        const ContingencyTable t = causes_to_table(c);
        CHECK(prevalence_from_causes(c) == t.tp + t.fn); // exact by design
    }
}

TEST_CASE("stability indices") {
    const StabilityIndices idx = stability_indices({0.25, 0.75, 0.5});
    CHECK(idx.ppv_index == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(idx.npv_index == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(idx.require_se_index() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(idx.require_sp_index() == doctest::Approx(2.0 / 15.0).epsilon(1e-15));

    const StabilityIndices idx2 = stability_indices({1.0 / 3.0, 0.8, 2.0 / 3.0});
    CHECK(idx2.ppv_index == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(idx2.npv_index == doctest::Approx(8.0 / 15.0).epsilon(1e-14));

    // P_U = 1 makes false positives impossible
    CHECK(*stability_indices({0.3, 1.0, 0.5}).sp_index == 0.0);

    CHECK_THROWS_AS(stability_indices({0.0, 0.5, 0.5}).require_se_index(),
                    UndefinedIndex);
    CHECK_THROWS_AS(stability_indices({1.0, 0.5, 0.5}).require_sp_index(),
                    UndefinedIndex);
    CHECK_THROWS_AS(stability_indices({0.5, 1.0, 1.0}).require_sp_index(),
                    UndefinedIndex);
}

TEST_CASE("risk equation") {
    const PerformanceMetrics m =
        metrics(causes_to_table({0.25, 0.75, 0.5}));
    const RiskEquation eq = risk_equation(m);
    CHECK(eq.intercept == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(eq.slope == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(eq.at(false) == doctest::Approx(1.0 - *m.npv).epsilon(1e-15));
    CHECK(eq.at(true) == doctest::Approx(*m.ppv).epsilon(1e-14));

    const RiskEquation perfect =
        risk_equation(metrics(ContingencyTable(0.5, 0.0, 0.0, 0.5)));
    CHECK(perfect.intercept == 0.0);
    CHECK(perfect.slope == 1.0);

    // uninformative marker: ppv equals 1-npv, risk does not move with T
    PerformanceMetrics flat;
    flat.ppv = 0.4;
    flat.npv = 0.6;
    flat.prevalence = 0.4;
    CHECK(risk_equation(flat).slope == doctest::Approx(0.0).epsilon(1e-15));

    PerformanceMetrics undefined_ppv;
    undefined_ppv.npv = 0.5;
    CHECK_THROWS_AS(risk_equation(undefined_ppv), UndefinedMetric);
}

TEST_CASE("symmetric setup") {
    const ContingencyTable t = symmetric_setup_table({0.25, 0.75, 0.5});
    CHECK(t.tp == doctest::Approx(0.21875).epsilon(1e-15));
    CHECK(t.fn == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(t.fp == doctest::Approx(0.03125).epsilon(1e-15));
    CHECK(t.tn == doctest::Approx(0.1875).epsilon(1e-15));

    // U always on: the outcome is certain
    const ContingencyTable certain = symmetric_setup_table({0.3, 1.0, 0.4});
    CHECK(certain.tp == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(certain.fn == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(certain.fp == 0.0);
    CHECK(certain.tn == 0.0);
}

TEST_CASE("both setups match brute-force enumeration on a grid") {
    for (double pt : kGrid) {
        for (double pu : kGrid) {
            for (double pv : kGrid) {
                const CauseProbabilities c(pt, pu, pv);
                const ContingencyTable ref = causes_to_table(c);
                const ContingencyTable ref_oracle =
                    enumerate_table(c, reference_outcome);
                CHECK(ref.tp == doctest::Approx(ref_oracle.tp).epsilon(1e-14));
                CHECK(ref.fp == doctest::Approx(ref_oracle.fp).epsilon(1e-14));
                CHECK(ref.fn == doctest::Approx(ref_oracle.fn).epsilon(1e-14));
                CHECK(ref.tn == doctest::Approx(ref_oracle.tn).epsilon(1e-14));

                const ContingencyTable sym = symmetric_setup_table(c);
                const ContingencyTable sym_oracle =
                    enumerate_table(c, symmetric_outcome);
                CHECK(sym.tp == doctest::Approx(sym_oracle.tp).epsilon(1e-14));
                CHECK(sym.fp == doctest::Approx(sym_oracle.fp).epsilon(1e-14));
                CHECK(sym.fn == doctest::Approx(sym_oracle.fn).epsilon(1e-14));
                CHECK(sym.tn == doctest::Approx(sym_oracle.tn).epsilon(1e-14));

                // De Morgan duality against the reference setup
                const ContingencyTable dual =
                    causes_to_table({1 - pt, 1 - pu, 1 - pv});
                CHECK(sym.tp == doctest::Approx(dual.tn).epsilon(1e-14));
                CHECK(sym.tn == doctest::Approx(dual.tp).epsilon(1e-14));
                CHECK(sym.fp == doctest::Approx(dual.fn).epsilon(1e-14));
                CHECK(sym.fn == doctest::Approx(dual.fp).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("bijection round-trip on random non-degenerate causes") {
    rng::Xoshiro256PlusPlus gen(77, 0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const CauseProbabilities c(gen.uniform_open01(), gen.uniform_open01(),
                                   gen.uniform_open01());
        const CauseProbabilities back = table_to_causes(causes_to_table(c));
        worst = std::max({worst, std::abs(back.p_t - c.p_t),
                          std::abs(back.p_u - c.p_u),
                          std::abs(back.p_v - c.p_v)});
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("table-side round-trip for consistent tables") {
    rng::Xoshiro256PlusPlus gen(78, 0);
    for (int i = 0; i < 2000; ++i) {
        // tables generated from causes are exactly the consistent ones
        const CauseProbabilities c(gen.uniform_open01(), gen.uniform_open01(),
                                   gen.uniform_open01());
        const ContingencyTable t = causes_to_table(c);
        const ContingencyTable back = causes_to_table(table_to_causes(t));
        CHECK(std::abs(back.tp - t.tp) <= 1e-12);
        CHECK(std::abs(back.fp - t.fp) <= 1e-12);
        CHECK(std::abs(back.fn - t.fn) <= 1e-12);
        CHECK(std::abs(back.tn - t.tn) <= 1e-12);
    }
}

TEST_CASE("metric identities in terms of causes") {
    rng::Xoshiro256PlusPlus gen(79, 0);
    for (int i = 0; i < 2000; ++i) {
        const CauseProbabilities c(gen.uniform_open01(), gen.uniform_open01(),
                                   gen.uniform_open01());
        const PerformanceMetrics m = metrics(causes_to_table(c));
        CHECK(*m.ppv == doctest::Approx(c.p_u).epsilon(1e-13));
        CHECK(1.0 - *m.npv ==
              doctest::Approx(c.p_u * c.p_v).epsilon(1e-12));
        CHECK(*m.se == doctest::Approx(c.p_t / (c.p_t + (1 - c.p_t) * c.p_v))
                           .epsilon(1e-12));
        const StabilityIndices idx = stability_indices(c);
        CHECK(*m.se ==
              doctest::Approx(1.0 / (1.0 + idx.require_se_index())).epsilon(1e-12));
    }
}
