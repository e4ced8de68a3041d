#include "fortrend/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "fortrend/errors.hpp"

namespace fortrend {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

void AttributeSchema::validate() const {
    if (names.empty())
        throw SchemaError("schema must have at least one attribute");
    if (!units.empty() && units.size() != names.size())
        throw SchemaError("schema units count does not match attribute count");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw SchemaError("schema attribute name is empty");
        if (!seen.insert(n).second)
            throw SchemaError("duplicate schema attribute name: " + n);
    }
}

AttributeSchema AttributeSchema::small_arms() {
    return {{"velocity_mps", "range_m", "mass_kg", "rate_per_min"},
            {"m/s", "m", "kg", "1/min"}};
}

Dataset::Dataset(AttributeSchema schema, std::vector<TechRecord> records,
                 std::string provenance)
    : schema_(std::move(schema)),
      records_(std::move(records)),
      provenance_(std::move(provenance)) {
    schema_.validate();
    for (const auto& r : records_) {
        if (!std::isfinite(r.year))
            throw ValidationError("record '" + r.name + "': year is not finite");
        if (r.attributes.size() != schema_.count())
            throw ValidationError("record '" + r.name + "': expected " +
                                  std::to_string(schema_.count()) +
                                  " attributes, got " +
                                  std::to_string(r.attributes.size()));
        for (std::size_t j = 0; j < r.attributes.size(); ++j) {
            double v = r.attributes[j];
            if (!std::isfinite(v) || v <= 0.0)
                throw ValidationError("record '" + r.name + "': attribute '" +
                                      schema_.names[j] + "' must be > 0, got " +
                                      format_double(v));
        }
    }
    std::stable_sort(records_.begin(), records_.end(),
                     [](const TechRecord& a, const TechRecord& b) {
                         return a.year < b.year;
                     });
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& origin,
                    std::size_t line_no, const std::string& what) {
    std::string t = trim(field);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ParseError(origin + ":" + std::to_string(line_no) +
                         ": cannot parse " + what + " from '" + t + "'");
    return v;
}

} // namespace

Dataset parse_csv(const std::string& text, const AttributeSchema& schema,
                  const std::string& origin) {
    schema.validate();
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<TechRecord> records;

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_fields(t);
        if (!header_seen) {
            std::vector<std::string> expected = {"name", "year"};
            expected.insert(expected.end(), schema.names.begin(),
                            schema.names.end());
            if (fields.size() < expected.size()) {
                throw SchemaError(origin + ": header is missing column '" +
                                  expected[fields.size()] + "'");
            }
            if (fields.size() > expected.size()) {
                throw SchemaError(origin + ": header has extra column '" +
                                  trim(fields[expected.size()]) + "'");
            }
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (trim(fields[i]) != expected[i])
                    throw SchemaError(origin + ": header column " +
                                      std::to_string(i + 1) + " is '" +
                                      trim(fields[i]) + "', expected '" +
                                      expected[i] + "'");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != schema.count() + 2)
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": expected " + std::to_string(schema.count() + 2) +
                             " fields, got " + std::to_string(fields.size()));
        TechRecord rec;
        rec.name = trim(fields[0]);
        rec.year = parse_number(fields[1], origin, line_no, "year");
        for (std::size_t j = 0; j < schema.count(); ++j) {
            double v = parse_number(fields[2 + j], origin, line_no,
                                    "attribute '" + schema.names[j] + "'");
            if (v <= 0.0)
                throw ValidationError(origin + ":" + std::to_string(line_no) +
                                      ": record '" + rec.name + "': attribute '" +
                                      schema.names[j] + "' must be > 0, got " +
                                      format_double(v));
            rec.attributes.push_back(v);
        }
        records.push_back(std::move(rec));
    }
    if (!header_seen)
        throw SchemaError(origin + ": no header line found");
    return Dataset(schema, std::move(records), origin);
}

Dataset load_csv(const std::string& path, const AttributeSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), schema, path);
}

void write_csv(const Dataset& d, std::ostream& out) {
    out << "name,year";
    for (const auto& n : d.schema().names) out << ',' << n;
    out << '\n';
    for (const auto& r : d.records()) {
        out << r.name << ',' << format_double(r.year);
        for (double v : r.attributes) out << ',' << format_double(v);
        out << '\n';
    }
}

std::string to_csv(const Dataset& d) {
    std::ostringstream out;
    write_csv(d, out);
    return out.str();
}

Dataset filter_years(const Dataset& d, double lo, double hi) {
    if (lo > hi) throw ValidationError("filter_years: lo > hi");
    std::vector<TechRecord> kept;
    for (const auto& r : d.records())
        if (r.year >= lo && r.year <= hi) kept.push_back(r);
    return Dataset(d.schema(), std::move(kept), d.provenance());
}

Dataset builtin_sample() {
    // (name, year, velocity m/s, range m, mass kg, rate 1/min)
    std::vector<TechRecord> records = {
        {"Longbow", 1180, {47, 75, 0.1023, 5}},
        {"Crossbow 13c", 1250, {45, 75, 0.0840, 2}},
        {"Handgonne", 1350, {149, 25, 0.0380, 0.5}},
        {"Harquebus", 1455, {240, 50, 0.0278, 1}},
        {"Wheel lock musket", 1595, {456, 75, 0.0300, 1}},
        {"Brown Bess musket", 1722, {457, 75, 0.0321, 3}},
        {"Berdan rifle", 1870, {437, 270, 0.0198, 7}},
        {"M27 assault rifle", 2008, {900, 550, 0.0041, 700}},
    };
    return Dataset(AttributeSchema::small_arms(), std::move(records),
                   "bundled example sample (8 records)");
}

} // namespace fortrend
