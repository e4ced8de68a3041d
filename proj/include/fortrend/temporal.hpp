#ifndef FORTREND_TEMPORAL_HPP
#define FORTREND_TEMPORAL_HPP

#include <string>
#include <variant>

namespace fortrend {

/// The five hypothesized laws for log10-FoR over calendar time.
enum class Variant { A, B, C, D, E };

char variant_letter(Variant v);
Variant variant_from_letter(char c);
std::string variant_description(Variant v);

/// A: g(t) = intercept + slope * t   (exponential growth of the FoR itself)
struct ExpLaw {
    double slope = 0.0;
    double intercept = 0.0;
};

/// B: g(t) = offset + curvature * (t - vertex_year)^2
struct QuadExpLaw {
    double vertex_year = 0.0;
    double curvature = 0.0;
    double offset = 0.0;
};

/// C: g(t) = offset + coefficient * (t - inflection_year)^3
struct CubicExpLaw {
    double inflection_year = 0.0;
    double coefficient = 0.0;
    double offset = 0.0;
};

/// D: g(t) = offset + exp(log_amplitude + rate * t); the inner exponential is
/// natural-base, the output stays in log10 units.
struct DoubleExpLaw {
    double offset = 0.0;
    double log_amplitude = 0.0;
    double rate = 0.0;
};

/// E: two independent affine segments split at `breakpoint`; the pre branch
/// includes t == breakpoint.
struct PiecewiseExpLaw {
    double pre_intercept = 0.0;
    double pre_slope = 0.0;
    double post_intercept = 0.0;
    double post_slope = 0.0;
    double breakpoint = 1832.0;

    /// Diagnostic only, never a fit constraint.
    bool accelerates_after_break() const { return post_slope > pre_slope; }
};

class TemporalModel {
public:
    using Params = std::variant<ExpLaw, QuadExpLaw, CubicExpLaw, DoubleExpLaw,
                                PiecewiseExpLaw>;

    TemporalModel() : params_(ExpLaw{}) {}
    TemporalModel(ExpLaw p) : params_(p) {}
    TemporalModel(QuadExpLaw p) : params_(p) {}
    TemporalModel(CubicExpLaw p) : params_(p) {}
    TemporalModel(DoubleExpLaw p) : params_(p) {}
    TemporalModel(PiecewiseExpLaw p) : params_(p) {}

    Variant variant() const;
    const Params& params() const { return params_; }

    template <class T> const T& as() const { return std::get<T>(params_); }

    /// Predicted log10 FoR at `year`. Throws OverflowError if model D's
    /// inner exponent exceeds 700.
    double eval(double year) const;

private:
    Params params_;
};

/// Returns a model whose eval is exactly c times the input's at every year.
/// Model D requires c > 0 (its amplitude is stored as a log).
TemporalModel apply_gauge(const TemporalModel& tm, double c);

/// Shifts the additive constant so that eval(anchor_year) == anchor_value.
/// Residual spread and model ranking are unaffected.
TemporalModel anchor(const TemporalModel& tm, double anchor_year,
                     double anchor_value);

/// Shape parameters beyond the additive constant: A:1 B:2 C:2 D:2 E:3.
int shape_param_count(Variant v);

/// Independently estimable temporal parameters in the gauge-fixed joint
/// model (shape + the additive constant): A:2 B:3 C:3 D:3 E:4.
int temporal_param_count(Variant v);

} // namespace fortrend

#endif
