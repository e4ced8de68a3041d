#ifndef FORTREND_SCORING_HPP
#define FORTREND_SCORING_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fortrend/fitjoint.hpp"

namespace fortrend {

enum class BicMode { Standard, PaperLiteral, Gaussian };

std::string bic_mode_name(BicMode m);
BicMode bic_mode_from_name(const std::string& s);

/// 1 - SSE/SST on the observed log10 FoR under the fitted gauge.
/// Throws ValidationError when SST == 0.
double r_squared(const FitResult& res);

/// Lower is better in every mode. A perfect fit (zero residual variance)
/// returns -infinity.
///   Standard:     -2L + k ln(n), L the Gaussian maximized log-likelihood
///   PaperLiteral: Standard + k ln(n)   (the doubled penalty as printed)
///   Gaussian:     (n/sigma_eps2) * [err + (k/n) sigma_eps2 ln(n)],
///                 err = SSE/(n-1); sigma_eps2 is supplied by the caller
///                 (by default the lowest-SSE candidate's SSE/n).
double bic(const FitResult& res, BicMode mode, double sigma_eps2 = 0.0);

/// Mean of |pred - obs| / |obs|. Throws ValidationError on a zero observed
/// value, naming its index.
double mape(std::span<const double> observed, std::span<const double> predicted);

struct HindcastWindow {
    double train_cutoff = 0.0;
    double eval_lo = 0.0;
    double eval_hi = 0.0;
    double mape = 0.0;
    int n_train = 0;
    int n_eval = 0;
    double max_train_year = 0.0; // for the no-lookahead assertion
};

struct HindcastReport {
    double mape_avg = 0.0;
    std::array<HindcastWindow, 3> windows;
};

/// The three-window protocol: fit on records with year <= 1800, score on
/// [1800,1900] and [1800,2015]; fit on year <= 1900, score on [1900,2015].
struct HindcastProtocol {
    double early_cutoff = 1800.0;
    double late_cutoff = 1900.0;
    double mid_year = 1900.0;
    double end_year = 2015.0;
};

/// Performs full joint refits on the truncated data (exponents and temporal
/// parameters alike) and evaluates MAPE of the window records' log10 FoR,
/// observed under each window's own fitted FoR model. Windows are inclusive
/// on both ends. Throws WindowError when a training subset is too small or
/// an evaluation window is empty.
HindcastReport hindcast_mape(const Dataset& d, Variant variant,
                             const FitConfig& cfg = {},
                             const HindcastProtocol& protocol = {});

struct ScoreReport {
    double r2 = 0.0;
    double bic_standard = 0.0;
    double bic_paper = 0.0;
    double bic_gaussian = 0.0;
    double mape_insample = 0.0; // MAPE of the fit's own residual table
    std::optional<HindcastReport> hindcast;
    std::string hindcast_error; // set when the protocol fails on this data
    int param_count = 0;
    int n = 0;
    bool perfect_fit = false;

    /// Hindcast average when available, in-sample MAPE otherwise.
    double mape_value() const;
};

/// Scores every successful fit. sigma_eps2 for Gaussian BIC defaults to the
/// lowest-SSE candidate's SSE/n; pass a positive override to pin it.
std::vector<std::pair<Variant, ScoreReport>> score_all(
    const Dataset& d, const std::vector<VariantOutcome>& outcomes,
    const FitConfig& cfg = {}, bool with_hindcast = true,
    double sigma_eps2_override = 0.0,
    const HindcastProtocol& protocol = {});

struct RankEntry {
    Variant variant = Variant::A;
    int bic_rank = 0;
    int r2_rank = 0;
    int mape_rank = 0;
    double composite = 0.0; // mean of the three rank positions
};

/// Orders by BIC (ascending, in `mode`), R^2 (descending) and MAPE
/// (ascending); composite rank is the mean position. Ties break by fewer
/// parameters, then variant letter. Returned sorted by composite.
std::vector<RankEntry> rank(
    const std::vector<std::pair<Variant, ScoreReport>>& reports,
    BicMode mode = BicMode::Standard);

} // namespace fortrend

#endif
