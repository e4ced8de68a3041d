#ifndef FORTREND_DATASET_HPP
#define FORTREND_DATASET_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace fortrend {

/// Ordered list of attribute identifiers plus display units.
struct AttributeSchema {
    std::vector<std::string> names;
    std::vector<std::string> units;

    std::size_t count() const { return names.size(); }

    /// Throws SchemaError on empty/duplicate names or unit count mismatch.
    void validate() const;

    /// The four-attribute schema used throughout the small-arms study:
    /// muzzle velocity (m/s), max effective range (m), projectile mass (kg),
    /// max rate of fire (1/min).
    static AttributeSchema small_arms();
};

/// One dated technology artifact. All attributes must be strictly positive
/// so that logarithms exist.
struct TechRecord {
    std::string name;
    double year = 0.0;
    std::vector<double> attributes;
};

/// Validated, year-sorted collection of TechRecords. Immutable after
/// construction; safe to share across concurrent fits.
class Dataset {
public:
    /// Sorts records ascending by year (stable; ties keep input order) and
    /// validates positivity and attribute counts against the schema.
    Dataset(AttributeSchema schema, std::vector<TechRecord> records,
            std::string provenance = "");

    const AttributeSchema& schema() const { return schema_; }
    const std::vector<TechRecord>& records() const { return records_; }
    const std::string& provenance() const { return provenance_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

private:
    AttributeSchema schema_;
    std::vector<TechRecord> records_;
    std::string provenance_;
};

/// Loads a CSV with header `name,year,<attr>...` matching the schema names.
/// Lines starting with '#' are ignored. Rows need not be year-sorted.
Dataset load_csv(const std::string& path, const AttributeSchema& schema);

/// Parses CSV text (same format as load_csv); `origin` names the source in
/// error messages.
Dataset parse_csv(const std::string& text, const AttributeSchema& schema,
                  const std::string& origin = "<string>");

/// Writes the dataset in the load_csv format at full (round-trip) precision.
void write_csv(const Dataset& d, std::ostream& out);
std::string to_csv(const Dataset& d);

/// Records with lo <= year <= hi, inclusive both ends.
Dataset filter_years(const Dataset& d, double lo, double hi);

/// The eight example records of the small-arms study, Longbow (1180)
/// through M27 assault rifle (2008).
Dataset builtin_sample();

/// Shortest round-trip decimal rendering of a double ("1200", "8.27e-06").
std::string format_double(double v);

} // namespace fortrend

#endif
