#include "sublevel/verifier.hpp"
#include "sublevel/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace sublevel {

std::string to_string(LambdaRegime r) { return r == LambdaRegime::Large ? "large" : "small"; }

std::string to_string(DivergenceVerdict v) {
    return v == DivergenceVerdict::DivergentTrend ? "DivergentTrend" : "Saturating";
}

std::string to_string(ZeroCheck z) {
    switch (z) {
        case ZeroCheck::Exact: return "exact";
        case ZeroCheck::Numerical: return "numerical";
        default: return "not_found";
    }
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("SUBLEVEL_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

int shell_index(double x) {
    if (x == 0 || !std::isfinite(x)) throw std::invalid_argument("shell_index: zero or non-finite coordinate");
    int e;
    double f = std::frexp(std::abs(x), &e);  // |x| = f 2^e, f in [1/2, 1)
    return f == 0.5 ? 1 - e : -e;
}

double shell_volume(const std::vector<int>& j) {
    long s = 0;
    for (int v : j) s += v;
    return std::ldexp(1.0, int(-s));
}

std::vector<std::vector<int>> enumerate_shells(const DomainSpec& b, int J) {
    if (J < 0) throw std::invalid_argument("enumerate_shells: J < 0");
    std::vector<Rational> slack;
    for (const auto& g : b.generators) {
        Rational s = 0;
        for (std::size_t i = 0; i < b.d; ++i)
            if (sgn(g[i]) > 0) s += g[i];
        slack.push_back(s);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> j(b.d, -J);
    while (true) {
        bool meets = true;
        for (std::size_t k = 0; k < b.generators.size() && meets; ++k) {
            Rational s = slack[k];
            for (std::size_t i = 0; i < b.d; ++i) s += b.generators[k][i] * j[i];
            meets = sgn(s) >= 0;
        }
        if (meets) out.push_back(j);
        std::size_t i = 0;
        while (i < b.d && j[i] == J) j[i++] = -J;
        if (i == b.d) break;
        ++j[i];
    }
    return out;
}

namespace {

// Double-precision evaluation of P. Integer exponents use per-coordinate power tables.
class Evaluator {
public:
    explicit Evaluator(const LaurentPolynomial& p) : d_(p.dim()), integral_(p.integer_exponents()) {
        if (!integral_ && !p.odd_denominators())
            throw std::invalid_argument("verifier: exponents with even denominators are not real on all orthants");
        lo_.assign(d_, 0);
        hi_.assign(d_, 0);
        for (const auto& [m, c] : p.terms()) {
            Term t;
            t.c = c.get_d();
            for (std::size_t i = 0; i < d_; ++i) {
                t.ef.push_back(m[i].get_d());
                t.odd.push_back(mpz_class(m[i].get_num() % 2) != 0);
                if (integral_) {
                    int e = int(m[i].get_num().get_si());
                    t.e.push_back(e);
                    lo_[i] = std::min(lo_[i], e);
                    hi_[i] = std::max(hi_[i], e);
                }
            }
            terms_.push_back(std::move(t));
        }
        for (std::size_t i = 0; i < d_; ++i) {
            offset_.push_back(width_);
            width_ += hi_[i] - lo_[i] + 1;
        }
    }

    std::size_t scratch_size() const { return width_; }

    double operator()(const double* x, double* table) const {
        if (integral_) {
            for (std::size_t i = 0; i < d_; ++i) {
                double* t = table + offset_[i] - lo_[i];
                t[0] = 1;
                for (int e = 1; e <= hi_[i]; ++e) t[e] = t[e - 1] * x[i];
                double inv = 1 / x[i];
                for (int e = -1; e >= lo_[i]; --e) t[e] = t[e + 1] * inv;
            }
            double s = 0;
            for (const auto& term : terms_) {
                double v = term.c;
                for (std::size_t i = 0; i < d_; ++i) v *= table[offset_[i] + term.e[i] - lo_[i]];
                s += v;
            }
            return s;
        }
        double s = 0;
        for (const auto& term : terms_) {
            double v = term.c;
            for (std::size_t i = 0; i < d_; ++i) {
                v *= std::pow(std::abs(x[i]), term.ef[i]);
                if (term.odd[i] && x[i] < 0) v = -v;
            }
            s += v;
        }
        return s;
    }

    /// Largest possible |log2 x^m| over the shell, for the overflow guard.
    double max_log2(const std::vector<int>& j) const {
        double worst = 0;
        for (const auto& term : terms_) {
            double center = 0, spread = 0;
            for (std::size_t i = 0; i < d_; ++i) {
                center -= term.ef[i] * j[i];
                spread += std::abs(term.ef[i]);
            }
            worst = std::max(worst, std::abs(center) + spread);
        }
        return worst;
    }

private:
    struct Term {
        double c;
        std::vector<int> e;
        std::vector<double> ef;
        std::vector<bool> odd;
    };
    std::size_t d_;
    bool integral_;
    std::vector<Term> terms_;
    std::vector<int> lo_, hi_;
    std::vector<std::size_t> offset_;
    std::size_t width_ = 0;
};

constexpr double kOverflowLog2 = 1000;

struct ShellResult {
    double value = 0;
    double variance = 0;
    double volume = 0;
    bool skipped = false;
};

struct Sampler {
    const Evaluator& eval;
    const DomainSpec& domain;
    std::vector<std::vector<double>> b;  // generators as doubles
    double lambda;
    int n;
    std::uint64_t seed;

    ShellResult run(const std::vector<int>& j) const {
        const std::size_t d = domain.d;
        ShellResult r;
        r.volume = shell_volume(j);
        if (eval.max_log2(j) > kOverflowLog2) {
            r.skipped = true;
            return r;
        }
        // Generators whose constraint is not already implied on the whole shell.
        std::vector<const std::vector<double>*> active;
        for (std::size_t k = 0; k < b.size(); ++k) {
            Rational top = 0;
            for (std::size_t i = 0; i < d; ++i) {
                const Rational& g = domain.generators[k][i];
                top -= g * j[i];
                if (sgn(g) < 0) top -= g;
            }
            if (sgn(top) > 0) active.push_back(&b[k]);
        }
        KeyedStream rs(seed);
        for (int v : j) rs.mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
        std::vector<double> x(d), table(eval.scratch_size());
        long hits = 0;
        for (int s = 0; s < n; ++s) {
            for (std::size_t i = 0; i < d; ++i) {
                std::uint64_t bits = rs.next();
                double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
                double mag = std::ldexp(2.0 - u, -j[i] - 1);
                x[i] = (bits & 1) ? -mag : mag;
            }
            bool inside = true;
            for (const auto* g : active) {
                double l = 0;
                for (std::size_t i = 0; i < d; ++i) l += (*g)[i] * std::log2(std::abs(x[i]));
                if (l > 0) {
                    inside = false;
                    break;
                }
            }
            if (inside && std::abs(lambda * eval(x.data(), table.data())) <= 1) ++hits;
        }
        double f = double(hits) / n;
        r.value = r.volume * f;
        r.variance = r.volume * r.volume * f * (1 - f) / n;
        return r;
    }
};

std::vector<ShellResult> run_shells(const Sampler& sampler, const std::vector<std::vector<int>>& shells, int threads) {
    std::vector<ShellResult> out(shells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < shells.size(); i = next++) out[i] = sampler.run(shells[i]);
    };
    int t = std::min<int>(resolve_threads(threads), std::max<std::size_t>(1, shells.size()));
    std::vector<std::thread> pool;
    for (int k = 1; k < t; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

// Fixed reduction tree, independent of the thread schedule.
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v, 0, v.size()); }

int inf_norm(const std::vector<int>& j) {
    int m = 0;
    for (int v : j) m = std::max(m, std::abs(v));
    return m;
}

void check_args(double lambda, int J, int n) {
    if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("measure_estimate: lambda must be > 0");
    if (J < 1) throw std::invalid_argument("measure_estimate: J must be >= 1");
    if (n < 100) throw std::invalid_argument("measure_estimate: n must be >= 100");
}

Sampler make_sampler(const Evaluator& eval, const DomainSpec& b, double lambda, int n, std::uint64_t seed) {
    Sampler s{eval, b, {}, lambda, n, seed};
    for (const auto& g : b.generators) {
        std::vector<double> v;
        for (std::size_t i = 0; i < b.d; ++i) v.push_back(g[i].get_d());
        s.b.push_back(std::move(v));
    }
    return s;
}

// Sums the shells with |j|_inf <= J.
MeasureEstimate aggregate(const std::vector<std::vector<int>>& shells, const std::vector<ShellResult>& res,
                          double lambda, int J, int n) {
    MeasureEstimate m;
    m.lambda = lambda;
    m.J = J;
    m.samples_per_shell = n;
    std::vector<double> values, variances, tail;
    for (std::size_t i = 0; i < shells.size(); ++i) {
        int norm = inf_norm(shells[i]);
        if (norm > J) continue;
        if (res[i].skipped) {
            ++m.shells_skipped;
            tail.push_back(res[i].volume);
            continue;
        }
        ++m.shells_used;
        values.push_back(res[i].value);
        variances.push_back(res[i].variance);
        if (norm == J) tail.push_back(res[i].value);
    }
    m.value = pairwise_sum(values);
    m.std_error = std::sqrt(pairwise_sum(variances));
    m.tail_indicator = pairwise_sum(tail);
    if (m.shells_skipped > 0)
        m.warnings.push_back(std::to_string(m.shells_skipped) +
                             " shells skipped by the overflow guard; their volume is counted in tail_indicator");
    return m;
}

}  // namespace

MeasureEstimate measure_estimate(const LaurentPolynomial& p, const DomainSpec& b, double lambda, int J, int n,
                                 std::uint64_t seed, int threads) {
    check_args(lambda, J, n);
    check_same_dim(QVector(p.dim()), QVector(b.d));
    Evaluator eval(p);
    auto shells = enumerate_shells(b, J);
    auto res = run_shells(make_sampler(eval, b, lambda, n, seed), shells, threads);
    return aggregate(shells, res, lambda, J, n);
}

std::vector<MeasureEstimate> lambda_sweep(const LaurentPolynomial& p, const DomainSpec& b, LambdaRegime regime,
                                          int k_min, int k_max, int J, int n, std::uint64_t seed, int threads) {
    if (k_min >= k_max) throw std::invalid_argument("lambda_sweep: need k_min < k_max");
    bool ok = regime == LambdaRegime::Large ? (k_min >= 4 && k_max <= 20) : (k_min >= -20 && k_max <= -4);
    if (!ok)
        throw std::invalid_argument(regime == LambdaRegime::Large ? "lambda_sweep: large regime needs k in [4, 20]"
                                                                  : "lambda_sweep: small regime needs k in [-20, -4]");
    std::vector<MeasureEstimate> out;
    for (int k = k_min; k <= k_max; ++k) {
        std::uint64_t sk = KeyedStream(seed).mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(k))).next();
        out.push_back(measure_estimate(p, b, std::ldexp(1.0, k), J, n, sk, threads));
    }
    return out;
}

namespace {

struct Line {
    double slope = 0, intercept = 0, slope_stderr = 0, rms = 0;
};

Line ols(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0) throw std::invalid_argument("fit_indices: degenerate design");
    Line l;
    l.slope = sxy / sxx;
    l.intercept = my - l.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - l.intercept - l.slope * x[i];
        ss += r * r;
    }
    l.rms = std::sqrt(ss / n);
    l.slope_stderr = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0;
    return l;
}

}  // namespace

FitResult fit_indices(const std::vector<MeasureEstimate>& sweep, const FitOptions& options) {
    if (sweep.size() < 6) throw std::invalid_argument("fit_indices: need at least 6 points");
    FitResult f;
    bool large = true, small = true;
    f.lambda_range = {sweep.front().lambda, sweep.front().lambda};
    for (const auto& m : sweep) {
        if (!(m.value > 0)) throw std::invalid_argument("fit_indices: nonpositive measure value");
        large = large && m.lambda >= 1;
        small = small && m.lambda <= 1;
        f.lambda_range.first = std::min(f.lambda_range.first, m.lambda);
        f.lambda_range.second = std::max(f.lambda_range.second, m.lambda);
    }
    if (!large && !small) throw std::invalid_argument("fit_indices: sweep straddles lambda = 1");
    f.regime = large ? LambdaRegime::Large : LambdaRegime::Small;

    std::vector<double> ll, lv, lg;
    for (const auto& m : sweep) {
        ll.push_back(std::log(m.lambda));
        lv.push_back(std::log(m.value));
        lg.push_back(std::log(std::abs(std::log(m.lambda)) + 1));
    }
    std::vector<double> y1 = lv;
    if (options.log_power)
        for (std::size_t i = 0; i < y1.size(); ++i) y1[i] -= *options.log_power * lg[i];
    Line s1 = ols(ll, y1);
    f.rho_hat = -s1.slope;
    f.rho_stderr = s1.slope_stderr;
    f.residual_rms = s1.rms;

    double rho = options.predicted_rho ? options.predicted_rho->get_d() : f.rho_hat;
    f.rho_used = rho;
    std::vector<double> y2;
    for (std::size_t i = 0; i < lv.size(); ++i) y2.push_back(lv[i] + rho * ll[i]);
    if (sweep.size() >= 4) f.a_hat = ols(lg, y2).slope;
    return f;
}

DivergenceProbe divergence_probe(const LaurentPolynomial& p, const DomainSpec& b, double lambda,
                                 const std::vector<int>& J_list, int n, std::uint64_t seed, int threads) {
    if (J_list.size() < 4) throw std::invalid_argument("divergence_probe: need at least 4 truncation radii");
    for (std::size_t i = 1; i < J_list.size(); ++i)
        if (J_list[i] <= J_list[i - 1]) throw std::invalid_argument("divergence_probe: J_list must increase");
    check_args(lambda, J_list.front(), n);
    check_same_dim(QVector(p.dim()), QVector(b.d));
    Evaluator eval(p);
    auto shells = enumerate_shells(b, J_list.back());
    auto res = run_shells(make_sampler(eval, b, lambda, n, seed), shells, threads);

    DivergenceProbe out;
    for (int J : J_list) out.partial_sums.push_back(aggregate(shells, res, lambda, J, n));

    // Increments are disjoint shell layers, hence independent.
    const std::size_t m = J_list.size();
    std::vector<double> inc(m), inc_var(m);
    for (std::size_t k = 0; k < m; ++k) {
        int lo = k == 0 ? -1 : J_list[k - 1];
        std::vector<double> v, w;
        for (std::size_t i = 0; i < shells.size(); ++i) {
            int norm = inf_norm(shells[i]);
            if (norm > lo && norm <= J_list[k] && !res[i].skipped) {
                v.push_back(res[i].value);
                w.push_back(res[i].variance);
            }
        }
        inc[k] = pairwise_sum(v);
        inc_var[k] = pairwise_sum(w);
    }
    double mj = 0;
    for (int J : J_list) mj += J;
    mj /= m;
    double sxx = 0;
    for (int J : J_list) sxx += (J - mj) * (J - mj);
    double slope = 0, slope_var = 0;
    for (std::size_t l = 0; l < m; ++l) {
        double W = 0;
        for (std::size_t k = l; k < m; ++k) W += (J_list[k] - mj) / sxx;
        slope += W * inc[l];
        slope_var += W * W * inc_var[l];
    }
    out.slope = slope;
    out.slope_stderr = std::sqrt(slope_var);

    // Increments per unit of J must stay positive and must not decay across the second half.
    auto rate = [&](std::size_t k) { return inc[k] / (J_list[k] - J_list[k - 1]); };
    bool growing = slope > 3 * out.slope_stderr && slope > 0;
    for (std::size_t k = m / 2; k < m && growing; ++k) growing = inc[k] > 3 * std::sqrt(inc_var[k]);
    growing = growing && rate(m - 1) >= 0.5 * rate(m / 2);
    out.verdict = growing ? DivergenceVerdict::DivergentTrend : DivergenceVerdict::Saturating;
    return out;
}

ZeroCheck check_zero_in_image(const LaurentPolynomial& p, const DomainSpec& b, std::uint64_t seed) {
    if (p.empty()) return ZeroCheck::Exact;
    if (b.contains_origin_neighborhood() && !p.has_constant_term() && !p.has_negative_exponents())
        return ZeroCheck::Exact;
    Evaluator eval(p);
    LaurentPolynomial abs_p(p.dim());
    for (const auto& [m, c] : p.terms()) abs_p.add_term(m, abs(c));
    Evaluator scale(abs_p);
    auto shells = enumerate_shells(b, 8);
    std::vector<std::vector<double>> gens;
    for (const auto& g : b.generators) {
        std::vector<double> v;
        for (std::size_t i = 0; i < b.d; ++i) v.push_back(g[i].get_d());
        gens.push_back(std::move(v));
    }
    auto in_domain = [&](const std::vector<double>& x) {
        for (const auto& g : gens) {
            double l = 0;
            for (std::size_t i = 0; i < x.size(); ++i) l += g[i] * std::log2(std::abs(x[i]));
            if (l > 0) return false;
        }
        return true;
    };
    std::vector<double> table(std::max(eval.scratch_size(), scale.scratch_size()));
    auto ratio = [&](const std::vector<double>& x) {
        return std::abs(eval(x.data(), table.data())) / scale(x.data(), table.data());
    };
    constexpr double kZero = 1e-12;

    // Sign change between samples, else pattern search on |P|/sum|c x^m| from the best samples.
    bool pos = false, neg = false;
    std::vector<std::pair<double, std::vector<double>>> best;
    std::vector<double> x(p.dim());
    for (const auto& j : shells) {
        if (eval.max_log2(j) > kOverflowLog2) continue;
        KeyedStream rs(seed);
        for (int v : j) rs.mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
        for (int s = 0; s < 64; ++s) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                std::uint64_t bits = rs.next();
                double mag = std::ldexp(2.0 - static_cast<double>(bits >> 11) * 0x1.0p-53, -j[i] - 1);
                x[i] = (bits & 1) ? -mag : mag;
            }
            if (!in_domain(x)) continue;
            double v = eval(x.data(), table.data());
            pos = pos || v > 0;
            neg = neg || v < 0;
            if (pos && neg) return ZeroCheck::Numerical;
            double r = ratio(x);
            if (r <= kZero) return ZeroCheck::Numerical;
            best.emplace_back(r, x);
        }
    }
    std::sort(best.begin(), best.end());
    if (best.size() > 16) best.resize(16);
    for (auto& [r, y] : best) {
        std::vector<double> h(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) h[i] = std::abs(y[i]) / 4;
        for (int it = 0; it < 2000 && r > kZero; ++it) {
            bool moved = false;
            for (std::size_t i = 0; i < y.size(); ++i)
                for (double dir : {1.0, -1.0}) {
                    std::vector<double> z = y;
                    z[i] += dir * h[i];
                    if (z[i] == 0 || !in_domain(z)) continue;
                    double rz = ratio(z);
                    if (rz < r) {
                        r = rz;
                        y = z;
                        moved = true;
                    }
                }
            if (!moved) {
                bool tiny = true;
                for (std::size_t i = 0; i < y.size(); ++i) {
                    h[i] /= 2;
                    tiny = tiny && h[i] < 1e-300;
                }
                if (tiny) break;
            }
        }
        if (r <= kZero) return ZeroCheck::Numerical;
    }
    return ZeroCheck::NotFound;
}

}  // namespace sublevel
