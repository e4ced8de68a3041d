#include "fortrend/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "fortrend/errors.hpp"

namespace fortrend {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string bic_mode_name(BicMode m) {
    switch (m) {
        case BicMode::Standard: return "standard";
        case BicMode::PaperLiteral: return "paper-literal";
        case BicMode::Gaussian: return "gaussian";
    }
    return "?";
}

BicMode bic_mode_from_name(const std::string& s) {
    if (s == "standard") return BicMode::Standard;
    if (s == "paper-literal") return BicMode::PaperLiteral;
    if (s == "gaussian") return BicMode::Gaussian;
    throw ValidationError("unknown BIC mode: " + s);
}

double r_squared(const FitResult& res) {
    if (res.n < 2) throw ValidationError("R^2 needs at least 2 points");
    double mean = 0.0;
    for (const auto& r : res.residuals) mean += r.observed_log10_for;
    mean /= res.n;
    double sst = 0.0;
    for (const auto& r : res.residuals) {
        double d = r.observed_log10_for - mean;
        sst += d * d;
    }
    if (sst == 0.0)
        throw ValidationError("R^2 undefined: observed values are all equal");
    return 1.0 - res.sse / sst;
}

double bic(const FitResult& res, BicMode mode, double sigma_eps2) {
    const int n = res.n, k = res.param_count;
    if (n <= k)
        throw ValidationError("BIC needs n > parameter count");
    double sigma2 = res.sse / n;
    if (sigma2 <= 0.0) return -kInf; // perfect fit sentinel
    double log_l = -(n / 2.0) * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0);
    double standard = -2.0 * log_l + k * std::log(n);
    switch (mode) {
        case BicMode::Standard:
            return standard;
        case BicMode::PaperLiteral:
            // Defined via its relation to the standard form so that
            // paper - standard == k ln(n) holds exactly.
            return standard + k * std::log(n);
        case BicMode::Gaussian: {
            if (sigma_eps2 <= 0.0)
                throw ValidationError(
                    "gaussian BIC needs a positive residual-variance estimate");
            double err_bar = res.sse / (n - 1);
            return (n / sigma_eps2) *
                   (err_bar + (static_cast<double>(k) / n) * sigma_eps2 *
                                  std::log(n));
        }
    }
    return standard;
}

double mape(std::span<const double> observed, std::span<const double> predicted) {
    if (observed.size() != predicted.size() || observed.empty())
        throw ValidationError("MAPE needs equal-length, non-empty inputs");
    double acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (observed[i] == 0.0)
            throw ValidationError("MAPE undefined: observed value at index " +
                                  std::to_string(i) + " is zero");
        acc += std::abs(predicted[i] - observed[i]) / std::abs(observed[i]);
    }
    return acc / static_cast<double>(observed.size());
}

HindcastReport hindcast_mape(const Dataset& d, Variant variant,
                             const FitConfig& cfg,
                             const HindcastProtocol& protocol) {
    struct WindowSpec {
        double cutoff, lo, hi;
    };
    const WindowSpec specs[3] = {
        {protocol.early_cutoff, protocol.early_cutoff, protocol.mid_year},
        {protocol.early_cutoff, protocol.early_cutoff, protocol.end_year},
        {protocol.late_cutoff, protocol.late_cutoff, protocol.end_year},
    };

    HindcastReport report;
    double lowest = std::numeric_limits<double>::lowest();
    for (int w = 0; w < 3; ++w) {
        const auto& spec = specs[w];
        std::string label = "window " + std::to_string(w + 1) + " (train<=" +
                            format_double(spec.cutoff) + ", eval [" +
                            format_double(spec.lo) + ", " +
                            format_double(spec.hi) + "])";
        Dataset train = filter_years(d, lowest, spec.cutoff);
        Dataset eval_set = filter_years(d, spec.lo, spec.hi);
        if (eval_set.empty())
            throw WindowError(label + ": evaluation window is empty");

        FitResult refit;
        try {
            // Full joint refit: FoR exponents and temporal parameters are
            // both re-estimated from the truncated data.
            refit = fit(train, variant, cfg);
        } catch (const Error& e) {
            throw WindowError(label + ": " + e.what());
        }

        std::vector<double> obs, pred;
        for (const auto& rec : eval_set.records()) {
            obs.push_back(eval_log10(refit.for_model, rec));
            pred.push_back(refit.temporal.eval(rec.year));
        }
        HindcastWindow& hw = report.windows[static_cast<std::size_t>(w)];
        hw.train_cutoff = spec.cutoff;
        hw.eval_lo = spec.lo;
        hw.eval_hi = spec.hi;
        hw.n_train = static_cast<int>(train.size());
        hw.n_eval = static_cast<int>(eval_set.size());
        hw.max_train_year =
            train.empty() ? -kInf : train.records().back().year;
        hw.mape = mape(obs, pred);
    }
    report.mape_avg = (report.windows[0].mape + report.windows[1].mape +
                       report.windows[2].mape) /
                      3.0;
    return report;
}

double ScoreReport::mape_value() const {
    return hindcast ? hindcast->mape_avg : mape_insample;
}

std::vector<std::pair<Variant, ScoreReport>> score_all(
    const Dataset& d, const std::vector<VariantOutcome>& outcomes,
    const FitConfig& cfg, bool with_hindcast, double sigma_eps2_override,
    const HindcastProtocol& protocol) {
    // sigma_eps2 for the Gaussian BIC: lowest-SSE candidate unless pinned.
    double sigma_eps2 = sigma_eps2_override;
    if (sigma_eps2 <= 0.0) {
        double best_sse = kInf;
        int best_n = 0;
        for (const auto& o : outcomes) {
            if (o.result && o.result->sse < best_sse) {
                best_sse = o.result->sse;
                best_n = o.result->n;
            }
        }
        if (best_n > 0) sigma_eps2 = best_sse / best_n;
    }

    std::vector<std::pair<Variant, ScoreReport>> out;
    for (const auto& o : outcomes) {
        if (!o.result) continue;
        const FitResult& res = *o.result;
        ScoreReport s;
        s.r2 = r_squared(res);
        s.bic_standard = bic(res, BicMode::Standard);
        s.bic_paper = bic(res, BicMode::PaperLiteral);
        s.bic_gaussian = sigma_eps2 > 0.0
                             ? bic(res, BicMode::Gaussian, sigma_eps2)
                             : -kInf;
        s.param_count = res.param_count;
        s.n = res.n;
        s.perfect_fit = res.sse <= 0.0;

        std::vector<double> obs, pred;
        for (const auto& r : res.residuals) {
            obs.push_back(r.observed_log10_for);
            pred.push_back(r.predicted_log10_for);
        }
        s.mape_insample = mape(obs, pred);

        if (with_hindcast) {
            try {
                s.hindcast = hindcast_mape(d, o.variant, cfg, protocol);
            } catch (const Error& e) {
                s.hindcast_error = e.what();
            }
        }
        out.emplace_back(o.variant, std::move(s));
    }
    return out;
}

namespace {

// 1-based positions after sorting by `key`; ties break by fewer parameters,
// then variant letter.
std::vector<int> positions(
    const std::vector<std::pair<Variant, ScoreReport>>& reports,
    const std::function<double(const ScoreReport&)>& key, bool ascending) {
    std::vector<std::size_t> idx(reports.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        double ka = key(reports[a].second), kb = key(reports[b].second);
        if (ka != kb) return ascending ? ka < kb : ka > kb;
        if (reports[a].second.param_count != reports[b].second.param_count)
            return reports[a].second.param_count < reports[b].second.param_count;
        return variant_letter(reports[a].first) < variant_letter(reports[b].first);
    });
    std::vector<int> pos(reports.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        pos[idx[r]] = static_cast<int>(r) + 1;
    return pos;
}

} // namespace

std::vector<RankEntry> rank(
    const std::vector<std::pair<Variant, ScoreReport>>& reports, BicMode mode) {
    if (reports.empty()) return {};
    auto bic_key = [mode](const ScoreReport& s) {
        switch (mode) {
            case BicMode::Standard: return s.bic_standard;
            case BicMode::PaperLiteral: return s.bic_paper;
            case BicMode::Gaussian: return s.bic_gaussian;
        }
        return s.bic_standard;
    };
    auto bic_pos = positions(reports, bic_key, true);
    auto r2_pos = positions(
        reports, [](const ScoreReport& s) { return s.r2; }, false);
    auto mape_pos = positions(
        reports, [](const ScoreReport& s) { return s.mape_value(); }, true);

    std::vector<RankEntry> entries;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        RankEntry e;
        e.variant = reports[i].first;
        e.bic_rank = bic_pos[i];
        e.r2_rank = r2_pos[i];
        e.mape_rank = mape_pos[i];
        e.composite = (bic_pos[i] + r2_pos[i] + mape_pos[i]) / 3.0;
        entries.push_back(e);
    }
    std::sort(entries.begin(), entries.end(),
              [&](const RankEntry& a, const RankEntry& b) {
                  if (a.composite != b.composite) return a.composite < b.composite;
                  auto pc = [&](const RankEntry& e) {
                      for (const auto& [v, s] : reports)
                          if (v == e.variant) return s.param_count;
                      return 0;
                  };
                  if (pc(a) != pc(b)) return pc(a) < pc(b);
                  return variant_letter(a.variant) < variant_letter(b.variant);
              });
    return entries;
}

} // namespace fortrend
