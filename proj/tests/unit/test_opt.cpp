#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "skilltune/opt/acquisition.hpp"
#include "skilltune/opt/gp.hpp"
#include "skilltune/opt/mobo.hpp"
#include "skilltune/opt/param_space.hpp"
#include "skilltune/opt/pareto.hpp"
#include "skilltune/opt/quasi_random.hpp"

using namespace skilltune;
using namespace skilltune::opt;

namespace {

double matern_oracle(double r, double ell, double sf2)
{
    const double s = std::sqrt(5.0) * r / ell;
    return sf2 * (1.0 + s + 5.0 * r * r / (3.0 * ell * ell)) * std::exp(-s);
}

bool brute_dominates(const std::vector<double>& a, const std::vector<double>& b, const std::vector<Sense>& senses)
{
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = senses[i] == Sense::maximize ? a[i] : -a[i];
        const double y = senses[i] == Sense::maximize ? b[i] : -b[i];
        if (x < y) return false;
        if (x > y) strictly = true;
    }
    return strictly;
}

} // namespace

TEST(Gp, TwoPointClosedForm)
{
    Eigen::MatrixXd X(2, 1);
    X << 0.2, 0.7;
    Eigen::VectorXd y(2);
    y << 1.0, -0.5;
    GpHyper h;
    h.log_lengths = Eigen::VectorXd::Constant(1, std::log(0.4));
    h.log_signal = std::log(1.5);
    h.log_noise = std::log(1e-3);
    GaussianProcess gp;
    gp.set(X, y, h);
    EXPECT_EQ(gp.jitter(), 0.0);

    const double ell = 0.4, sf2 = 1.5, sn2 = 1e-3;
    const double k11 = sf2 + sn2, k12 = matern_oracle(0.5, ell, sf2);
    const double det = k11 * k11 - k12 * k12;
    // 2x2 inverse by cofactors
    const double i11 = k11 / det, i12 = -k12 / det;
    for (double xq : {0.0, 0.2, 0.45, 0.9, 1.3}) {
        const double a = matern_oracle(std::abs(xq - 0.2), ell, sf2);
        const double b = matern_oracle(std::abs(xq - 0.7), ell, sf2);
        const double mean = a * (i11 * 1.0 + i12 * -0.5) + b * (i12 * 1.0 + i11 * -0.5);
        const double var = sf2 - (a * (i11 * a + i12 * b) + b * (i12 * a + i11 * b));
        const auto [m, v] = gp.predict(Eigen::VectorXd::Constant(1, xq));
        EXPECT_NEAR(m, mean, 1e-9) << xq;
        EXPECT_NEAR(v, var, 1e-9) << xq;
    }
    EXPECT_NEAR(matern52(0.0), 1.0, 1e-15);
    EXPECT_NEAR(gp.kernel(X.row(0).transpose(), X.row(1).transpose(), h), k12, 1e-12);
}

TEST(Gp, LogMarginalLikelihoodGradient)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd X(15, 3);
    Eigen::VectorXd y(15);
    for (int i = 0; i < 15; ++i) {
        for (int j = 0; j < 3; ++j) X(i, j) = u(rng);
        y[i] = std::sin(3.0 * X(i, 0)) + X(i, 1) * X(i, 2);
    }
    GaussianProcess gp;
    GpHyper h;
    h.log_lengths = Eigen::Vector3d(std::log(0.3), std::log(0.7), std::log(1.2));
    h.log_signal = std::log(0.8);
    h.log_noise = std::log(1e-2);
    gp.set(X, y, h);
    Eigen::VectorXd grad;
    gp.log_marginal_likelihood(h, &grad);
    const Eigen::VectorXd theta = h.pack();
    ASSERT_EQ(grad.size(), theta.size());
    const double eps = 1e-6;
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
        Eigen::VectorXd p = theta, m = theta;
        p[k] += eps;
        m[k] -= eps;
        const double fd = (gp.log_marginal_likelihood(GpHyper::unpack(p)) -
                           gp.log_marginal_likelihood(GpHyper::unpack(m))) / (2.0 * eps);
        EXPECT_NEAR(grad[k], fd, 1e-5 * std::max(1.0, std::abs(fd))) << k;
    }
}

TEST(Gp, FitImprovesLikelihood)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd X(20, 2);
    Eigen::VectorXd y(20);
    for (int i = 0; i < 20; ++i) {
        X(i, 0) = u(rng);
        X(i, 1) = u(rng);
        y[i] = std::cos(4.0 * X(i, 0));
    }
    GaussianProcess gp;
    gp.fit(X, y, rng);
    EXPECT_GE(gp.log_marginal_likelihood(gp.hyper()), gp.log_marginal_likelihood(GpHyper::defaults(2)) - 1e-9);
    EXPECT_THROW(gp.set(X, Eigen::VectorXd::Zero(3), GpHyper::defaults(2)), Error);
}

TEST(Acquisition, NormalCdfMatchesErfc)
{
    for (double x = -8.0; x <= 8.0; x += 0.25) {
        EXPECT_NEAR(normal_cdf(x), 0.5 * std::erfc(-x / std::sqrt(2.0)), 1e-14);
    }
    EXPECT_NEAR(normal_pdf(0.0), 1.0 / std::sqrt(2.0 * M_PI), 1e-15);
}

TEST(Acquisition, ExpectedImprovementMatchesMonteCarlo)
{
    std::mt19937_64 rng(13);
    std::normal_distribution<double> z(0.0, 1.0);
    const struct {
        double mu, sigma, best;
    } cases[] = {{0.0, 1.0, 0.0}, {0.5, 0.3, 0.7}, {-1.0, 2.0, 0.5}, {1.2, 0.5, 0.2}};
    for (const auto& c : cases) {
        const int n = 4'000'000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += std::max(c.mu + c.sigma * z(rng) - c.best, 0.0);
        EXPECT_NEAR(expected_improvement(c.mu, c.sigma, c.best), sum / n, 1e-3);
    }
    EXPECT_DOUBLE_EQ(expected_improvement(2.0, 0.0, 1.5), 0.5);
    EXPECT_DOUBLE_EQ(expected_improvement(1.0, 0.0, 1.5), 0.0);
}

TEST(Acquisition, SimplexSamplesAreOnSimplex)
{
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        const auto w = sample_simplex(3, rng);
        EXPECT_NEAR(w.sum(), 1.0, 1e-12);
        EXPECT_GE(w.minCoeff(), 0.0);
    }
}

TEST(Pareto, FrontMatchesBruteForce)
{
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<int> grid(0, 20);
    const std::vector<Sense> senses = {Sense::maximize, Sense::minimize, Sense::maximize};
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<std::vector<double>> pts(500);
        for (auto& p : pts) p = {double(grid(rng)), double(grid(rng)), double(grid(rng))};
        const auto front = pareto_front(pts, senses);
        std::vector<std::size_t> oracle;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < pts.size() && !dominated; ++j) dominated = brute_dominates(pts[j], pts[i], senses);
            if (!dominated) oracle.push_back(i);
        }
        auto sorted = front;
        std::sort(sorted.begin(), sorted.end());
        ASSERT_EQ(sorted, oracle) << rep;

        // idempotent on the front itself
        std::vector<std::vector<double>> sub;
        for (auto i : front) sub.push_back(pts[i]);
        EXPECT_EQ(pareto_front(sub, senses).size(), sub.size());
    }
}

TEST(Pareto, DominanceIsIrreflexiveAndTransitive)
{
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<int> grid(0, 3);
    const std::vector<Sense> senses = {Sense::minimize, Sense::maximize};
    std::vector<std::vector<double>> pts(60);
    for (auto& p : pts) p = {double(grid(rng)), double(grid(rng))};
    for (const auto& a : pts) {
        EXPECT_FALSE(dominates(a, a, senses));
        for (const auto& b : pts) {
            EXPECT_EQ(dominates(a, b, senses), brute_dominates(a, b, senses));
            for (const auto& c : pts) {
                if (dominates(a, b, senses) && dominates(b, c, senses)) {
                    EXPECT_TRUE(dominates(a, c, senses));
                }
            }
        }
    }
}

TEST(Pareto, HypervolumeMatchesMonteCarlo)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<Sense> senses = {Sense::maximize, Sense::minimize};
    const std::vector<double> ref = {0.0, 1.0};
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::vector<double>> pts(30);
        for (auto& p : pts) p = {u(rng), u(rng)};
        const double hv = hypervolume_2d(pts, ref, senses);
        const int n = 400'000;
        int hit = 0;
        for (int i = 0; i < n; ++i) {
            const double a = u(rng), b = u(rng);
            for (const auto& p : pts) {
                if (p[0] >= a && p[1] <= b) {
                    ++hit;
                    break;
                }
            }
        }
        EXPECT_NEAR(hv, double(hit) / n, 0.01 * hv) << rep;
    }
    EXPECT_EQ(hypervolume_2d({{-1.0, 2.0}}, ref, senses), 0.0);
    EXPECT_NEAR(hypervolume_2d({{0.5, 0.5}}, ref, senses), 0.25, 1e-15);
}

TEST(ParamSpace, EncodeDecodeRoundTrip)
{
    ParamSpace s;
    s.add({"r", ParamType::real, -2.0, 3.0, {}});
    s.add({"i", ParamType::integer, 1.0, 9.0, {}});
    s.add({"o", ParamType::ordinal, 0.0, 0.0, {0.1, 0.5, 2.0}});
    s.add({"c", ParamType::categorical, 0.0, 0.0, {7.0, 3.0, 5.0, 1.0}});
    EXPECT_EQ(s.encoded_size(), 7u);
    EXPECT_THROW(s.add({"r", ParamType::real, 0.0, 1.0, {}}), ConfigError);
    EXPECT_THROW(s.add({"bad", ParamType::real, 1.0, 1.0, {}}), ConfigError);
    EXPECT_THROW(s.add({"bad", ParamType::ordinal, 0.0, 0.0, {2.0, 1.0}}), ConfigError);

    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    for (int i = 0; i < 500; ++i) {
        const auto c = s.sample_uniform(rng);
        ASSERT_TRUE(s.contains(c));
        const auto back = s.decode(s.encode(c));
        EXPECT_NEAR(back[0], c[0], 1e-12);
        EXPECT_EQ(back[1], c[1]);
        EXPECT_EQ(back[2], c[2]);
        EXPECT_EQ(back[3], c[3]);

        Eigen::VectorXd any(7);
        for (int k = 0; k < 7; ++k) any[k] = u(rng);
        EXPECT_TRUE(s.contains(s.decode(any)));
    }
    EXPECT_FALSE(s.contains(std::vector<double>{3.5, 2.0, 0.5, 1.0}));
    EXPECT_FALSE(s.contains(std::vector<double>{0.0, 2.5, 0.5, 1.0}));
    EXPECT_FALSE(s.contains(std::vector<double>{0.0, 2.0, 0.4, 1.0}));
    EXPECT_FALSE(s.contains(std::vector<double>{0.0, 2.0, 0.5, 4.0}));
}

TEST(QuasiRandom, RadicalInverse)
{
    EXPECT_DOUBLE_EQ(radical_inverse(1, 2), 0.5);
    EXPECT_DOUBLE_EQ(radical_inverse(6, 2), 0.375); // 110b -> 0.011b
    EXPECT_DOUBLE_EQ(radical_inverse(5, 3), 7.0 / 9.0); // 12_3 -> 0.21_3
    EXPECT_EQ(first_primes(6), (std::vector<int>{2, 3, 5, 7, 11, 13}));
    const auto H = halton(64, 3, Eigen::Vector3d(0.9, 0.0, 0.3));
    EXPECT_GE(H.minCoeff(), 0.0);
    EXPECT_LT(H.maxCoeff(), 1.0);
    EXPECT_NEAR(H(0, 1), 1.0 / 3.0, 1e-15);
}

TEST(Mobo, RefitScheduleIsGeometric)
{
    ParamSpace s;
    s.add({"x", ParamType::real, 0.0, 1.0, {}});
    BoSettings b;
    b.warmup = 8;
    const MoBo bo(s, {Sense::maximize}, b);
    int full = 0;
    for (std::size_t n = 0; n < 8; ++n) EXPECT_EQ(bo.refit_kind(n), 2);
    for (std::size_t n = 8; n <= 400; ++n) {
        const int k = bo.refit_kind(n);
        full += k == 2;
        if (k != 2) {
            EXPECT_EQ(k, (n - 8) % 5 == 0 ? 1 : 0) << n;
        }
    }
    EXPECT_EQ(bo.refit_kind(8), 2);
    EXPECT_EQ(bo.refit_kind(10), 2);
    EXPECT_LT(full, 25);
}

TEST(Mobo, FindsOneDimensionalOptimum)
{
    ParamSpace s;
    s.add({"x", ParamType::real, -1.0, 1.0, {}});
    BoSettings b;
    b.warmup = 5;
    b.candidates = 500;
    int ok = 0;
    for (int seed = 0; seed < 10; ++seed) {
        MoBo bo(s, {Sense::minimize}, b);
        std::mt19937_64 rng(100 + seed);
        std::vector<Configuration> configs;
        std::vector<std::vector<double>> values;
        double best = 1e9, best_x = 0.0;
        for (int it = 0; it < 40; ++it) {
            const auto sug = bo.suggest(configs, values, rng);
            EXPECT_TRUE(s.contains(sug.config));
            EXPECT_EQ(sug.warmup, it < 5);
            const double x = sug.config[0];
            const double f = (x - 0.37) * (x - 0.37);
            configs.push_back(sug.config);
            values.push_back({f});
            if (f < best) {
                best = f;
                best_x = x;
            }
        }
        ok += std::abs(best_x - 0.37) < 0.05;
    }
    EXPECT_GE(ok, 9);
}

TEST(Mobo, RejectsBadInput)
{
    ParamSpace s;
    EXPECT_THROW(MoBo(s, {}, {}), ConfigError);
    MoBo bo(s, {Sense::maximize});
    std::mt19937_64 rng(1);
    EXPECT_THROW(bo.suggest({}, {}, rng), ConfigError);
}
