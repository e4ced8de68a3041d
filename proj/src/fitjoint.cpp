#include "fortrend/fitjoint.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "fortrend/errors.hpp"
#include "fortrend/lstsq.hpp"

namespace fortrend {

int joint_param_count(std::size_t n_attr, Variant v) {
    // (n_attr - 1) free exponents + 1 combined constant + shape params.
    return static_cast<int>(n_attr) + shape_param_count(v);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Problem {
    const Dataset* data = nullptr;
    Eigen::MatrixXd logs; // n x n_attr, log10 of attributes
    Eigen::VectorXd years;
    double t_mean = 0.0;
    double t_scale = 1.0;
    Eigen::VectorXd s; // centered/scaled years

    std::size_t n() const { return static_cast<std::size_t>(years.size()); }
    std::size_t n_attr() const { return static_cast<std::size_t>(logs.cols()); }
};

Problem make_problem(const Dataset& d) {
    Problem p;
    p.data = &d;
    const auto& recs = d.records();
    const std::size_t n = recs.size(), m = d.schema().count();
    p.logs.resize(n, m);
    p.years.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.years[i] = recs[i].year;
        for (std::size_t j = 0; j < m; ++j)
            p.logs(i, j) = std::log10(recs[i].attributes[j]);
    }
    p.t_mean = p.years.mean();
    double dev = (p.years.array() - p.t_mean).abs().maxCoeff();
    p.t_scale = dev > 0.0 ? dev : 1.0;
    p.s = (p.years.array() - p.t_mean) / p.t_scale;
    return p;
}

/// Inner solve at alpha1 = 1, combined constant folded into the temporal
/// law. `temporal_cols` carries the temporal regressors (negated columns are
/// applied here); `recover` maps their coefficients back to a TemporalModel.
struct InnerSolution {
    Eigen::VectorXd exponents; // alpha_2..alpha_n in the alpha1 = 1 gauge
    TemporalModel temporal;    // kappa = 0 convention
    double sse = 0.0;
};

InnerSolution solve_inner(
    const Problem& p, const std::vector<Eigen::VectorXd>& temporal_cols,
    const std::vector<std::string>& temporal_names,
    const std::function<TemporalModel(const Eigen::VectorXd&)>& recover) {
    const std::size_t n = p.n(), m = p.n_attr();
    const std::size_t n_exp = m - 1, n_t = temporal_cols.size();
    Eigen::MatrixXd A(n, n_exp + n_t);
    std::vector<std::string> names;
    for (std::size_t j = 1; j < m; ++j) {
        A.col(static_cast<Eigen::Index>(j - 1)) = p.logs.col(static_cast<Eigen::Index>(j));
        names.push_back(p.data->schema().names[j]);
    }
    for (std::size_t j = 0; j < n_t; ++j) {
        A.col(static_cast<Eigen::Index>(n_exp + j)) = -temporal_cols[j];
        names.push_back(temporal_names[j]);
    }
    Eigen::VectorXd b = -p.logs.col(0);

    LstsqResult ls = solve_least_squares(A, b, names);

    InnerSolution out{Eigen::VectorXd(ls.coef.head(static_cast<Eigen::Index>(n_exp))),
                      recover(ls.coef.tail(static_cast<Eigen::Index>(n_t))),
                      ls.sse};
    return out;
}

InnerSolution solve_variant_a(const Problem& p) {
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(p.n()));
    double tm = p.t_mean, ts = p.t_scale;
    return solve_inner(
        p, {ones, p.s}, {"const", "year"},
        [tm, ts](const Eigen::VectorXd& c) -> TemporalModel {
            double slope = c[1] / ts;
            return ExpLaw{slope, c[0] - slope * tm};
        });
}

InnerSolution solve_variant_b(const Problem& p, const FitConfig& cfg) {
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(p.n()));
    double tm = p.t_mean, ts = p.t_scale;
    if (cfg.pin_vertex) {
        double v = *cfg.pin_vertex;
        Eigen::VectorXd w2 =
            ((p.years.array() - v) / ts).square().matrix();
        return solve_inner(
            p, {ones, w2}, {"const", "quadratic"},
            [v, ts](const Eigen::VectorXd& c) -> TemporalModel {
                return QuadExpLaw{v, c[1] / (ts * ts), c[0]};
            });
    }
    // theta2 (t - theta1)^2 + c0 spans all quadratics in t, so a single
    // linear solve suffices; the vertex form is recovered from the
    // polynomial coefficients.
    double anchor_year = cfg.anchor_year;
    return solve_inner(
        p, {ones, p.s, p.s.cwiseProduct(p.s).eval()},
        {"const", "year", "year^2"},
        [tm, ts, anchor_year](const Eigen::VectorXd& c) -> TemporalModel {
            double a2 = c[2] / (ts * ts);
            double a1 = c[1] / ts; // linear coefficient around t_mean
            double a0 = c[0];
            if (a2 == 0.0) {
                if (a1 != 0.0)
                    throw DegenerateFitError(
                        "model B: quadratic term vanished with a nonzero "
                        "linear term; the vertex form cannot represent a "
                        "pure linear trend");
                return QuadExpLaw{anchor_year, 0.0, a0};
            }
            double vertex = tm - a1 / (2.0 * a2);
            double offset = a0 - a1 * a1 / (4.0 * a2);
            return QuadExpLaw{vertex, a2, offset};
        });
}

InnerSolution solve_variant_e(const Problem& p, const FitConfig& cfg) {
    const auto n = static_cast<Eigen::Index>(p.n());
    Eigen::VectorXd pre = Eigen::VectorXd::Zero(n), post = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd pre_s = Eigen::VectorXd::Zero(n), post_s = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p.years[i] <= cfg.breakpoint) { // pre branch inclusive at the break
            pre[i] = 1.0;
            pre_s[i] = p.s[i];
        } else {
            post[i] = 1.0;
            post_s[i] = p.s[i];
        }
    }
    double tm = p.t_mean, ts = p.t_scale, tb = cfg.breakpoint;
    return solve_inner(
        p, {pre, pre_s, post, post_s},
        {"pre-const", "pre-year", "post-const", "post-year"},
        [tm, ts, tb](const Eigen::VectorXd& c) -> TemporalModel {
            double pre_slope = c[1] / ts, post_slope = c[3] / ts;
            return PiecewiseExpLaw{c[0] - pre_slope * tm, pre_slope,
                                   c[2] - post_slope * tm, post_slope, tb};
        });
}

InnerSolution solve_cubic_at(const Problem& p, double inflection) {
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(p.n()));
    double ts = p.t_scale;
    Eigen::VectorXd w3 = ((p.years.array() - inflection) / ts).cube().matrix();
    return solve_inner(
        p, {ones, w3}, {"const", "cubic"},
        [inflection, ts](const Eigen::VectorXd& c) -> TemporalModel {
            return CubicExpLaw{inflection, c[1] / (ts * ts * ts), c[0]};
        });
}

InnerSolution solve_double_exp_at(const Problem& p, double rate) {
    const auto n = static_cast<Eigen::Index>(p.n());
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    double t_ref = p.years.maxCoeff();
    Eigen::VectorXd e(n);
    for (Eigen::Index i = 0; i < n; ++i)
        e[i] = std::exp(rate * (p.years[i] - t_ref));
    InnerSolution sol = solve_inner(
        p, {ones, e}, {"const", "exp-term"},
        [rate, t_ref](const Eigen::VectorXd& c) -> TemporalModel {
            if (c[1] <= 0.0)
                throw NoFitError("model D: non-positive amplitude");
            return DoubleExpLaw{c[0], std::log(c[1]) - rate * t_ref, rate};
        });
    return sol;
}

/// Profile search: grid scan, then golden-section refinement of the best
/// bracket. `eval` returns +inf for infeasible points.
double profile_minimize(const std::function<double(double)>& objective,
                        const ProfileGrid& grid, int refine_iters,
                        const std::string& what) {
    std::vector<double> xs(static_cast<std::size_t>(grid.steps));
    for (int i = 0; i < grid.steps; ++i) {
        double f = static_cast<double>(i) / (grid.steps - 1);
        xs[static_cast<std::size_t>(i)] =
            grid.log_spaced
                ? std::exp(std::log(grid.lo) +
                           f * (std::log(grid.hi) - std::log(grid.lo)))
                : grid.lo + f * (grid.hi - grid.lo);
    }
    auto param = [&](double x) { return grid.log_spaced ? std::log(x) : x; };
    auto unparam = [&](double u) { return grid.log_spaced ? std::exp(u) : u; };

    double best_x = 0.0, best_f = kInf;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = objective(xs[i]);
        if (f < best_f) {
            best_f = f;
            best_x = xs[i];
            best_i = i;
        }
    }
    if (!std::isfinite(best_f))
        throw NoFitError("no feasible grid point for " + what);

    double lo = param(xs[best_i == 0 ? 0 : best_i - 1]);
    double hi = param(xs[std::min(best_i + 1, xs.size() - 1)]);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(unparam(x1)), f2 = objective(unparam(x2));
    for (int it = 0; it < refine_iters; ++it) {
        if (std::abs(b - a) <= 1e-8 * (std::abs(a) + std::abs(b) + 1e-12)) break;
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective(unparam(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective(unparam(x2));
        }
    }
    for (double cand : {unparam((a + b) / 2.0), unparam(x1), unparam(x2)}) {
        double f = objective(cand);
        if (f < best_f) {
            best_f = f;
            best_x = cand;
        }
    }
    return best_x;
}

InnerSolution solve_variant_c(const Problem& p, const FitConfig& cfg) {
    auto objective = [&](double inflection) -> double {
        try {
            return solve_cubic_at(p, inflection).sse;
        } catch (const Error&) {
            return kInf;
        }
    };
    double best = profile_minimize(objective, cfg.cubic_inflection_grid,
                                   cfg.refine_iters,
                                   "model C inflection year");
    return solve_cubic_at(p, best);
}

InnerSolution solve_variant_d(const Problem& p, const FitConfig& cfg) {
    auto objective = [&](double rate) -> double {
        try {
            return solve_double_exp_at(p, rate).sse;
        } catch (const Error&) {
            return kInf;
        }
    };
    double best = profile_minimize(objective, cfg.double_exp_rate_grid,
                                   cfg.refine_iters, "model D rate");
    return solve_double_exp_at(p, best);
}

} // namespace

FitResult fit(const Dataset& d, Variant variant, const FitConfig& cfg) {
    if (cfg.gauge_alpha1 == 0.0)
        throw GaugeError("gauge_alpha1 must be nonzero");
    const std::size_t m = d.schema().count();
    const int k = joint_param_count(m, variant);
    if (d.size() < static_cast<std::size_t>(k) + 1)
        throw InsufficientDataError(
            "variant " + std::string(1, variant_letter(variant)) + " needs at least " +
            std::to_string(k + 1) + " records (" + std::to_string(k) +
            " free parameters + 1), got " + std::to_string(d.size()));

    Problem p = make_problem(d);

    InnerSolution inner = [&] {
        switch (variant) {
            case Variant::A: return solve_variant_a(p);
            case Variant::B: return solve_variant_b(p, cfg);
            case Variant::C: return solve_variant_c(p, cfg);
            case Variant::D: return solve_variant_d(p, cfg);
            case Variant::E: return solve_variant_e(p, cfg);
        }
        throw Error("unreachable");
    }();

    // Break the scale degeneracy: the solve pinned alpha1 = 1; rescale the
    // whole pair to the configured gauge, then fix the offset degeneracy by
    // anchoring and moving the compensating shift into log10_k.
    const double c = cfg.gauge_alpha1;
    FoRModel raw;
    raw.log10_k = 0.0;
    raw.alphas.resize(m);
    raw.alphas[0] = 1.0;
    for (std::size_t j = 1; j < m; ++j)
        raw.alphas[j] = inner.exponents[static_cast<Eigen::Index>(j - 1)];

    auto [gauged_for, gauged_tm] = rescale_gauge(raw, inner.temporal, c);
    double shift = cfg.anchor_value - gauged_tm.eval(cfg.anchor_year);
    TemporalModel final_tm = anchor(gauged_tm, cfg.anchor_year, cfg.anchor_value);
    FoRModel final_for = gauged_for;
    final_for.log10_k = shift;

    FitResult res;
    res.for_model = std::move(final_for);
    res.temporal = std::move(final_tm);
    res.n = static_cast<int>(d.size());
    res.param_count = k;
    res.converged = true;
    res.gauge_applied = {c, shift, cfg.gauge_alpha1, cfg.anchor_year,
                         cfg.anchor_value};
    res.residuals.reserve(d.size());
    double sse = 0.0;
    for (const auto& rec : d.records()) {
        double obs = eval_log10(res.for_model, rec);
        double pred = res.temporal.eval(rec.year);
        double r = obs - pred;
        res.residuals.push_back({rec.year, obs, pred, r});
        sse += r * r;
    }
    res.sse = sse;
    return res;
}

std::vector<VariantOutcome> fit_all(const Dataset& d, const FitConfig& cfg) {
    std::vector<VariantOutcome> out;
    int failures = 0;
    for (Variant v : {Variant::A, Variant::B, Variant::C, Variant::D, Variant::E}) {
        VariantOutcome o;
        o.variant = v;
        try {
            o.result = fit(d, v, cfg);
        } catch (const Error& e) {
            o.error = e.what();
            ++failures;
        }
        out.push_back(std::move(o));
    }
    if (failures == 5) {
        std::string msg = "all five variants failed to fit:";
        for (const auto& o : out)
            msg += std::string("\n  ") + variant_letter(o.variant) + ": " + o.error;
        throw NoFitError(msg);
    }
    return out;
}

} // namespace fortrend
