#include "skilltune/opt/gp.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace skilltune::opt {

namespace {

constexpr double kSqrt5 = 2.23606797749978969640;

Eigen::VectorXd clamp(const Eigen::VectorXd& v, const GpFitOptions& o)
{
    Eigen::VectorXd out = v;
    const auto d = v.size() - 2;
    for (Eigen::Index i = 0; i < d; ++i) out[i] = std::clamp(out[i], o.min_log_length, o.max_log_length);
    out[d] = std::clamp(out[d], o.min_log_signal, o.max_log_signal);
    out[d + 1] = std::clamp(out[d + 1], o.min_log_noise, o.max_log_noise);
    return out;
}

/// Inputs divided by the length scales, one column per point.
Eigen::MatrixXd scaled_transpose(const Eigen::MatrixXd& X, const GpHyper& h)
{
    const Eigen::VectorXd inv = (-h.log_lengths).array().exp();
    return inv.asDiagonal() * X.transpose();
}

} // namespace

GpHyper GpHyper::defaults(Eigen::Index dim)
{
    GpHyper h;
    h.log_lengths = Eigen::VectorXd::Constant(dim, std::log(0.3));
    h.log_signal = 0.0;
    h.log_noise = std::log(1e-3);
    return h;
}

Eigen::VectorXd GpHyper::pack() const
{
    Eigen::VectorXd v(log_lengths.size() + 2);
    v << log_lengths, log_signal, log_noise;
    return v;
}

GpHyper GpHyper::unpack(const Eigen::VectorXd& v)
{
    GpHyper h;
    h.log_lengths = v.head(v.size() - 2);
    h.log_signal = v[v.size() - 2];
    h.log_noise = v[v.size() - 1];
    return h;
}

double matern52(double r)
{
    const double a = kSqrt5 * r;
    return (1.0 + a + a * a / 3.0) * std::exp(-a);
}

double GaussianProcess::kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const GpHyper& h) const
{
    const Eigen::VectorXd inv = (-h.log_lengths).array().exp();
    const double r = ((a - b).cwiseProduct(inv)).norm();
    return std::exp(h.log_signal) * matern52(r);
}

Eigen::MatrixXd GaussianProcess::gram(const GpHyper& h) const
{
    const auto n = X_.rows();
    const auto d = X_.cols();
    const Eigen::MatrixXd Zt = scaled_transpose(X_, h);
    const double sf2 = std::exp(h.log_signal);
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        K(j, j) = sf2 + std::exp(h.log_noise);
        const double* zj = Zt.col(j).data();
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double* zi = Zt.col(i).data();
            double r2 = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) r2 += (zi[k] - zj[k]) * (zi[k] - zj[k]);
            K(i, j) = K(j, i) = sf2 * matern52(std::sqrt(r2));
        }
    }
    return K;
}

void GaussianProcess::factorize()
{
    Eigen::MatrixXd K = gram(hyper_);
    jitter_ = 0.0;
    const double scale = K.diagonal().mean();
    for (int attempt = 0; attempt < 8; ++attempt) {
        llt_.compute(K);
        if (llt_.info() == Eigen::Success) {
            alpha_ = llt_.solve(y_);
            return;
        }
        const double next = (jitter_ == 0.0 ? 1e-10 : jitter_ * 10.0) * scale;
        K.diagonal().array() += next - jitter_ * scale;
        jitter_ = next / scale;
    }
    throw GpError("kernel matrix is not positive definite even with jitter");
}

void GaussianProcess::set(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const GpHyper& h)
{
    if (X.rows() != y.size()) throw GpError("GP input/target size mismatch");
    if (h.log_lengths.size() != X.cols()) throw GpError("GP hyperparameter dimension mismatch");
    X_ = X;
    y_ = y;
    hyper_ = h;
    factorize();
}

double GaussianProcess::log_marginal_likelihood(const GpHyper& h, Eigen::VectorXd* grad) const
{
    const auto n = X_.rows();
    const auto d = X_.cols();
    const Eigen::MatrixXd K = gram(h);
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
    const Eigen::VectorXd alpha = llt.solve(y_);
    const Eigen::MatrixXd L = llt.matrixL();
    const double lml = -0.5 * y_.dot(alpha) - L.diagonal().array().log().sum() -
                       0.5 * static_cast<double>(n) * std::log(2.0 * 3.14159265358979323846);
    if (!grad) return lml;

    const Eigen::MatrixXd W = alpha * alpha.transpose() - llt.solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd Zt = scaled_transpose(X_, h);
    const double sf2 = std::exp(h.log_signal);
    grad->setZero(d + 2);
    double g_signal = 0.0;
    std::vector<double> sq(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < n; ++j) {
        g_signal += 0.5 * W(j, j) * sf2;
        const double* zj = Zt.col(j).data();
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double* zi = Zt.col(i).data();
            double r2 = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                const double t = zi[k] - zj[k];
                sq[static_cast<std::size_t>(k)] = t * t;
                r2 += t * t;
            }
            const double r = std::sqrt(r2);
            const double e = std::exp(-kSqrt5 * r);
            const double w = W(i, j); // symmetric pair counted twice, times one half
            g_signal += w * sf2 * (1.0 + kSqrt5 * r + 5.0 * r2 / 3.0) * e;
            const double common = w * sf2 * (5.0 / 3.0) * (1.0 + kSqrt5 * r) * e;
            for (Eigen::Index k = 0; k < d; ++k) (*grad)[k] += common * sq[static_cast<std::size_t>(k)];
        }
    }
    (*grad)[d] = g_signal;
    (*grad)[d + 1] = 0.5 * W.diagonal().sum() * std::exp(h.log_noise);
    return lml;
}

void GaussianProcess::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::mt19937_64& rng,
                          const GpFitOptions& opt, const GpHyper* warm)
{
    if (X.rows() < 2) throw GpError("GP fit needs at least two observations");
    if (X.rows() != y.size()) throw GpError("GP input/target size mismatch");
    X_ = X;
    y_ = y;
    const auto d = X.cols();

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };

    Eigen::VectorXd best_theta;
    double best = -std::numeric_limits<double>::infinity();
    for (int start = 0; start < std::max(1, opt.restarts); ++start) {
        Eigen::VectorXd theta;
        if (start == 0) {
            theta = (warm && warm->log_lengths.size() == d ? *warm : GpHyper::defaults(d)).pack();
        } else {
            theta.resize(d + 2);
            for (Eigen::Index k = 0; k < d; ++k) theta[k] = uniform(std::log(0.05), std::log(2.0));
            theta[d] = uniform(std::log(0.3), std::log(3.0));
            theta[d + 1] = uniform(std::log(1e-4), std::log(1e-1));
        }
        theta = clamp(theta, opt);
        Eigen::VectorXd g;
        double f = log_marginal_likelihood(GpHyper::unpack(theta), &g);
        double step = 1.0;
        for (int it = 0; it < opt.iterations && std::isfinite(f); ++it) {
            const double gmax = g.cwiseAbs().maxCoeff();
            if (gmax < 1e-6) break;
            bool improved = false;
            for (int ls = 0; ls < 12; ++ls) {
                const Eigen::VectorXd cand = clamp(theta + (step / gmax) * g, opt);
                const Eigen::VectorXd moved = cand - theta;
                if (moved.cwiseAbs().maxCoeff() < 1e-9) break;
                const double fc = log_marginal_likelihood(GpHyper::unpack(cand));
                if (fc > f + 1e-4 * g.dot(moved)) {
                    const double gain = fc - f;
                    theta = cand;
                    f = log_marginal_likelihood(GpHyper::unpack(cand), &g);
                    improved = gain > 1e-7;
                    step = std::min(1.0, step * 2.0);
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        if (std::isfinite(f) && f > best) {
            best = f;
            best_theta = theta;
        }
    }
    if (best_theta.size() == 0) throw GpError("GP hyperparameter search found no valid kernel");
    hyper_ = GpHyper::unpack(best_theta);
    factorize();
}

std::pair<double, double> GaussianProcess::predict(const Eigen::VectorXd& x) const
{
    Eigen::MatrixXd Xq(1, x.size());
    Xq.row(0) = x.transpose();
    Eigen::VectorXd m, v;
    predict(Xq, m, v);
    return {m[0], v[0]};
}

void GaussianProcess::predict(const Eigen::MatrixXd& Xq, Eigen::VectorXd& mean, Eigen::VectorXd& var) const
{
    const auto n = X_.rows();
    const auto m = Xq.rows();
    const auto d = X_.cols();
    const Eigen::MatrixXd Zt = scaled_transpose(X_, hyper_);
    const Eigen::MatrixXd Zq = scaled_transpose(Xq, hyper_);
    const double sf2 = std::exp(hyper_.log_signal);
    Eigen::MatrixXd Ks(n, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double* zq = Zq.col(j).data();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double* zi = Zt.col(i).data();
            double r2 = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) r2 += (zi[k] - zq[k]) * (zi[k] - zq[k]);
            Ks(i, j) = sf2 * matern52(std::sqrt(r2));
        }
    }
    mean = Ks.transpose() * alpha_;
    const Eigen::MatrixXd V = llt_.matrixL().solve(Ks);
    var = (sf2 - V.colwise().squaredNorm().array()).cwiseMax(0.0).matrix().transpose();
}

} // namespace skilltune::opt
