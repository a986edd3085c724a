#include "gmhd/errors.hpp"
#include "gmhd/lp.hpp"

#include <doctest.h>

#include <cmath>

using namespace gmhd;
using namespace gmhd::lp;

namespace {

SpectralField mode_field(const GridSpec& g, double kx, double ky) {
    const auto f = sample(g, [&](const auto& x) { return std::cos(kx * x[0] + ky * x[1]); });
    return forward(g, std::span<const double>(f));
}

} // namespace

TEST_CASE("profile facts") {
    CHECK(cutoff_profile(0.5) == 1.0);
    CHECK(cutoff_profile(1.0) == 1.0);
    CHECK(cutoff_profile(2.0) == 0.0);
    CHECK(bump_profile(1.0) == 1.0);
    CHECK(bump_profile(0.5) == 0.0);
    CHECK(bump_profile(2.0) == 0.0);
    for (int i = 1; i < 400; ++i) {
        const double r = 0.5 + 1.5 * i / 400.0;
        const double p = bump_profile(r);
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
        CHECK(p * p <= p);
    }
    double prev = 1.0;
    for (int i = 0; i <= 200; ++i) {
        const double c = cutoff_profile(1.0 + i / 200.0);
        CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("partition construction limits") {
    const GridSpec g = GridSpec::make(2, 128);
    CHECK_NOTHROW(build_partition(g, 0, 6));
    CHECK_THROWS_AS(build_partition(g, 0, 7), ConfigError);
    CHECK_THROWS_AS(build_partition(g, 1, 6), ConfigError);
    CHECK_THROWS_AS(build_partition(g, -2, -1), ConfigError);
}

TEST_CASE("partition of unity on the lattice") {
    const GridSpec g = GridSpec::make(2, 128);
    const auto p = build_partition(g, 0, 6);
    const Lattice& lat = lattice(g);
    double defect = 0.0;
    for (double r : lat.kmag)
        if (r >= 2.0 && r <= 32.0) defect = std::max(defect, std::abs(1.0 - p.partition_sum(r)));
    CHECK(defect <= 1e-12);
    CHECK(p.partition_sum(1.0) == doctest::Approx(1.0).epsilon(1e-12));

    // only bands j-1, j, j+1 touch |xi| = 2^j
    for (int j = 1; j <= 5; ++j) {
        const double r = std::ldexp(1.0, j);
        for (int i = 0; i <= 6; ++i)
            if (std::abs(i - j) > 1) CHECK(p.band_weight(i, r) == 0.0);
    }
}

TEST_CASE("partial sums match a radial tabulation of the profile") {
    // Independent tabulation: 200001 samples of the profile on [1/2, 2], linear interpolation.
    const int m = 200000;
    std::vector<double> table(m + 1);
    for (int i = 0; i <= m; ++i) {
        const double r = 0.5 + 1.5 * i / m;
        const double t = r <= 1.0 ? 1.0 : r >= 2.0 ? 0.0 : [&] {
            const double s = r - 1.0, a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
            return 1.0 - a / (a + b);
        }();
        const double r2 = 2.0 * r;
        const double t2 = r2 <= 1.0 ? 1.0 : r2 >= 2.0 ? 0.0 : [&] {
            const double s = r2 - 1.0, a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
            return 1.0 - a / (a + b);
        }();
        table[i] = t - t2;
    }
    auto tab = [&](double r) {
        if (r <= 0.5 || r >= 2.0) return 0.0;
        const double x = (r - 0.5) / 1.5 * m;
        const int i = std::min(static_cast<int>(x), m - 1);
        return table[i] + (x - i) * (table[i + 1] - table[i]);
    };
    const GridSpec g = GridSpec::make(2, 128);
    const auto p = build_partition(g, 0, 6);
    Rng rng = make_rng(3, "test/radial", 0);
    std::uniform_real_distribution<double> u(1.0, 64.0);
    for (int s = 0; s < 200; ++s) {
        const double r = u(rng);
        double part = 0.0, ref = 0.0;
        for (int j = 0; j <= 3; ++j) {
            part += p.band_weight(j, r);
            ref += tab(std::ldexp(r, -j));
        }
        CHECK(std::abs(part - ref) <= 1e-6);
    }
}

TEST_CASE("block support and reconstruction") {
    const GridSpec g = GridSpec::make(2, 64);
    const auto p = build_partition(g, 0, 5);
    SpectralField u(g); // exact pair at xi = +-(3, 4), |xi| = 5
    u[3 * 64 + 4] = 1.0;
    u[lattice(g).partner[3 * 64 + 4]] = 1.0;
    for (int j = 0; j <= 5; ++j) {
        const bool touches = std::ldexp(1.0, j - 1) < 5.0 && 5.0 < std::ldexp(1.0, j + 1);
        if (!touches) CHECK(l2_norm(lp_block(u, p, j)) == 0.0);
    }

    Rng rng = make_rng(9, "test/recon", 0);
    const SpectralField v = random_band_field(g, 0.0, g.max_wavenumber(), rng);
    SpectralField sum = lp_lowpass(v, p, -1);
    for (int j = 0; j <= 5; ++j) sum += lp_block(v, p, j);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(sum[i] - v[i]));
    CHECK(err <= 1e-12);

    const SpectralField low = lp_lowpass(v, p, -1);
    CHECK(l2_norm(low) <= l2_norm(v));
}

TEST_CASE("Bernstein ratios") {
    const GridSpec g = GridSpec::make(2, 128);
    const auto p = build_partition(g, 0, 6);
    // single mode at |xi| = 2^j, p = q = 2: exactly 1
    const SpectralField u = mode_field(g, 8.0, 0.0);
    CHECK(bernstein_ratio(u, p, 3, BernsteinNorms::l2_l2, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bernstein_ratio(u, p, 3, BernsteinNorms::l2_l2, 1) == doctest::Approx(1.0).epsilon(1e-14));

    // one derivative, p = q = 2 on a shell-supported field: formula ratio <= 2, support ratio in (1/2, 2)
    for (int j = 2; j <= 5; ++j) {
        Rng rng = make_rng(1, "test/bern", j);
        const SpectralField v = random_band_field(g, std::ldexp(1.0, j - 1), std::ldexp(1.0, j + 1), rng, true);
        const double r = bernstein_ratio(v, p, j, BernsteinNorms::l2_l2, 1);
        CHECK(r > 0.0);
        CHECK(r <= 2.0);
        const double support = hom_norm(v, 1.0) / (std::ldexp(1.0, j) * l2_norm(v));
        CHECK(support > 0.5);
        CHECK(support < 2.0);
    }
    CHECK_THROWS_AS(bernstein_ratio(SpectralField(g), p, 3, BernsteinNorms::l2_linf, 0), DegenerateSample);
}

TEST_CASE("Lemma 1 bound") {
    const GridSpec g = GridSpec::make(2, 64);
    MultiplierSpec m;
    const Lemma1Terms zero = lemma1_bound(SpectralField(g), 3.0, m);
    CHECK(zero.bound == 0.0);
    CHECK(zero.grad_linf == 0.0);
    CHECK(zero.low + zero.mid + zero.high == 0.0);

    CHECK_THROWS_AS(lemma1_bound(SpectralField(g), 2.0, m), ParameterError);
    MultiplierSpec wrong = m;
    wrong.alpha = 1.5;
    CHECK_THROWS_AS(lemma1_bound(SpectralField(g), 3.0, wrong), ParameterError);
    wrong = m;
    wrong.gamma = 0.6;
    CHECK_THROWS_AS(lemma1_bound(SpectralField(g), 3.0, wrong), ParameterError);

    const SpectralField u8 = mode_field(g, 8.0, 0.0);
    const SpectralField u4 = mode_field(g, 4.0, 0.0);
    const Lemma1Terms t8 = lemma1_bound(u8, 3.0, m);
    const Lemma1Terms t4 = lemma1_bound(u4, 3.0, m);
    CHECK(t8.grad_linf == doctest::Approx(8.0).epsilon(1e-12));
    const double l2 = std::sqrt(2.0) * kPi;
    const double hk = std::pow(65.0, 1.5) * l2;
    const int n = static_cast<int>(std::ceil(std::log2(kE + hk)));
    CHECK(t8.n_used == n);
    const double lu = 64.0 / std::sqrt(std::log(kE + 8.0)) * l2;
    CHECK(t8.bound == doctest::Approx(l2 + n * lu + std::ldexp(hk, -n)).epsilon(1e-12));
    CHECK(t8.ratio <= 2.0 * t4.ratio);
    CHECK(t8.grad_linf <= t8.low + t8.mid + t8.high + 1e-12);
}

TEST_CASE("s_j selection") {
    CHECK(sj_select(GFamily::unity, 0.0, 4) == 16.0);
    const double s = sj_select(GFamily::log_power, 0.5, 4);
    CHECK(s > 8.0);
    CHECK(s < 32.0);
    CHECK(s > 30.0);
    MultiplierSpec m;
    CHECK(m.g(s) >= 0.5 * m.g(32.0));

    // non-monotone g with an interior spike; dense-sampling oracle for the sup
    auto spike = [](double x) { return 1.0 + 5.0 * std::exp(-std::pow((x - 11.0) / 0.8, 2)); };
    const double sj = sj_select(spike, 3);
    double sup = 0.0;
    for (int i = 0; i <= 100000; ++i) sup = std::max(sup, spike(4.0 + 12.0 * i / 100000.0));
    CHECK(spike(sj) >= 0.5 * sup);
}

TEST_CASE("Gagliardo-Nirenberg ratios") {
    const GridSpec g = GridSpec::make(2, 64);
    const GnParams par{};
    const SpectralField u = mode_field(g, 4.0, 0.0);
    CHECK(gn_ratio(u, GnKind::sup_interpolation, par) ==
          doctest::Approx(1.0 / (4.0 * kPi * std::sqrt(2.0))).epsilon(1e-12));
    // single mode: Hoelder-type ratios are exactly 1
    CHECK(gn_ratio(u, GnKind::l2_interpolation, par) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gn_ratio(u, GnKind::hk_interpolation, par) == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng = make_rng(2, "test/gn", 0);
    const SpectralField v = random_band_field(g, 1.0, 12.0, rng);
    for (GnKind k : {GnKind::sup_interpolation, GnKind::l2_interpolation, GnKind::grad_sup, GnKind::hk_interpolation}) {
        const double r1 = gn_ratio(v, k, par);
        const double r2 = gn_ratio(3.5 * v, k, par);
        CHECK(std::abs(r1 - r2) <= 1e-12 * r1);
        CHECK(parse_gn_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(gn_ratio(SpectralField(g), GnKind::grad_sup, par), DegenerateSample);
    CHECK_THROWS_AS(parse_gn_kind("other"), UnsupportedError);
    GnParams bad = par;
    bad.lambda = 1.4;
    CHECK_THROWS_AS(gn_ratio(v, GnKind::sup_interpolation, bad), ParameterError);
}

TEST_CASE("inequality summaries") {
    std::vector<SampleRow> rows;
    for (int j = 1; j <= 4; ++j)
        for (int i = 0; i < 3; ++i) rows.push_back({"f", j, std::ldexp(1.0, j), static_cast<std::uint64_t>(i), 0.5 + 0.1 * i});
    const InequalityReport flat = summarize("f", rows, 0, 0.1);
    CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flat.bounded);
    CHECK(flat.ratio_max >= flat.ratio_mean);
    CHECK(flat.samples == 12);

    std::vector<SampleRow> grow;
    for (int j = 1; j <= 4; ++j) grow.push_back({"g", j, std::ldexp(1.0, j), 0, std::ldexp(1.0, j)});
    const InequalityReport g = summarize("g", grow, 0, 0.1);
    CHECK(g.slope == doctest::Approx(1.0));
    CHECK_FALSE(g.bounded);
}
