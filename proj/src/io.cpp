#include "coa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coa/coherence.hpp"
#include "coa/entanglement.hpp"

namespace coa::io {

using nlohmann::json;

namespace {

std::string position(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

MatrixDocument parse_matrix_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "document is not an object");
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw Error(ErrorKind::ParseError, "missing 'entries' array");

    const auto& rows = doc["entries"];
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorKind::BadShape, "no rows");
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array()) throw Error(ErrorKind::ParseError, "row " + std::to_string(i) + " is not an array");
        if (rows[i].size() != n) {
            throw Error(ErrorKind::BadShape, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                                 " entries, expected " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto& z = rows[i][j];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw Error(ErrorKind::ParseError, "entry " + position(i, j) + " is not an [re, im] pair");
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }

    MatrixDocument out;
    out.dim = n;
    if (!doc.contains("dim")) throw Error(ErrorKind::ParseError, "missing 'dim'");
    if (!doc["dim"].is_number_unsigned()) throw Error(ErrorKind::ParseError, "'dim' is not a positive integer");
    const auto declared = doc["dim"].get<std::size_t>();
    if (declared != n) {
        throw Error(ErrorKind::BadShape, "'dim' is " + std::to_string(declared) + " but entries are " +
                                             std::to_string(n) + "x" + std::to_string(n));
    }
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw Error(ErrorKind::ParseError, "'label' is not a string");
        out.label = doc["label"].get<std::string>();
    }
    out.entries = ComplexMatrix(n, n, std::move(entries));
    return out;
}

MatrixDocument load_matrix_document(const std::filesystem::path& path) {
    return parse_matrix_document(read_file(path));
}

DensityMatrix read_state(std::string_view text, const Tolerances& tol) {
    return DensityMatrix(parse_matrix_document(text).entries, tol);
}

DensityMatrix read_state_file(const std::filesystem::path& path, const Tolerances& tol) {
    return read_state(read_file(path), tol);
}

ComplexMatrix read_hermitian(std::string_view text, const Tolerances& tol) {
    auto doc = parse_matrix_document(text);
    const auto& m = doc.entries;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol.herm)
                throw Error(ErrorKind::NotHermitian, "entry " + position(i, j) + " differs from conj of " +
                                                         position(j, i));
    return std::move(doc.entries);
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string write_matrix_document(const ComplexMatrix& m, std::string_view label) {
    std::ostringstream os;
    os << "{\"dim\": " << m.rows();
    if (!label.empty()) os << ", \"label\": " << json(std::string(label)).dump();
    os << ", \"entries\": [";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",\n  [" : "\n  [");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << "[" << format_double(m(i, j).real()) << ", " << format_double(m(i, j).imag()) << "]";
        }
        os << "]";
    }
    os << "\n]}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Reports

ReportRecord build_report_record(const DensityMatrix& rho, std::string label, const OptimizerConfig& config,
                                 const Tolerances& tol) {
    ReportRecord r;
    r.label = std::move(label);
    r.dim = rho.dim();
    r.c_l1 = c_l1(rho);
    r.c_rel_ent = c_rel_ent(rho, tol);

    const auto noa = negativity_of_assistance_mc(rho, config, tol);
    const auto& l1 = noa.coherence_side;
    const auto rel = optimize_ca(rho, Measure::RelativeEntropy, config, tol);
    r.ca_l1_lower = l1.lower_bound;
    r.ca_l1_upper = l1.upper_bound;
    r.ca_l1_exact = l1.exact;
    r.ca_r_lower = rel.lower_bound;
    r.ca_r_upper = rel.upper_bound;
    r.ca_r_exact = rel.exact;
    r.negativity_of_assistance = noa.value;

    const auto cls = classify(rho, l1, rel, tol);
    r.state_class = cls.kind;
    r.accessible_l1 = cls.accessible_l1;
    r.accessible_rel_ent = cls.accessible_rel_ent;

    constexpr double kBoundSlack = 1e-8;
    constexpr double kStrictMargin = 1e-9;
    r.sandwich_ok = r.c_l1 <= r.ca_l1_lower + 1e-10 && r.ca_l1_lower <= r.ca_l1_upper + kBoundSlack &&
                    r.c_rel_ent <= r.ca_r_lower + 1e-10 && r.ca_r_lower <= r.ca_r_upper + kBoundSlack;
    if (cls.kind == StateClassKind::S3Mixed) {
        r.strict_ok = r.ca_l1_lower - r.c_l1 > kStrictMargin && r.ca_r_lower - r.c_rel_ent > kStrictMargin;
    } else {
        r.strict_ok = std::abs(r.ca_l1_lower - r.c_l1) <= kStrictMargin &&
                      std::abs(r.ca_r_lower - r.c_rel_ent) <= kStrictMargin;
    }
    const double d = static_cast<double>(r.dim);
    r.range_ok = r.ca_l1_lower >= -1e-10 && r.ca_l1_lower <= d - 1.0 + 1e-10 && r.ca_r_lower >= -1e-10 &&
                 r.ca_r_lower <= std::log2(d) + 1e-10;
    r.dominance_ok = rel.witness.average_coherence(Measure::RelativeEntropy) <=
                     rel.witness.average_coherence(Measure::L1) + 1e-10;
    return r;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> columns{
        "label",         "dim",         "c_l1",          "c_rel_ent",         "ca_l1_lower",
        "ca_l1_upper",   "ca_l1_exact", "ca_r_lower",    "ca_r_upper",        "ca_r_exact",
        "class",         "accessible_l1", "accessible_rel_ent", "negativity_of_assistance",
        "sandwich_ok",   "strict_ok",   "dominance_ok", "range_ok"};
    return columns;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const char* flag(bool b) { return b ? "true" : "false"; }

json to_json(const ReportRecord& r) {
    return json{{"label", r.label},
                {"dim", r.dim},
                {"c_l1", r.c_l1},
                {"c_rel_ent", r.c_rel_ent},
                {"ca_l1_lower", r.ca_l1_lower},
                {"ca_l1_upper", r.ca_l1_upper},
                {"ca_l1_exact", r.ca_l1_exact},
                {"ca_r_lower", r.ca_r_lower},
                {"ca_r_upper", r.ca_r_upper},
                {"ca_r_exact", r.ca_r_exact},
                {"class", std::string(to_string(r.state_class))},
                {"accessible_l1", r.accessible_l1},
                {"accessible_rel_ent", r.accessible_rel_ent},
                {"negativity_of_assistance", r.negativity_of_assistance},
                {"sandwich_ok", r.sandwich_ok},
                {"strict_ok", r.strict_ok},
                {"dominance_ok", r.dominance_ok},
                {"range_ok", r.range_ok}};
}

StateClassKind parse_class(const std::string& s) {
    if (s == "S1") return StateClassKind::S1PureIncoherent;
    if (s == "S2") return StateClassKind::S2PureCoherent;
    if (s == "S3") return StateClassKind::S3Mixed;
    throw Error(ErrorKind::ParseError, "unknown state class '" + s + "'");
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
    return x;
}

bool parse_flag(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw Error(ErrorKind::ParseError, "not a boolean: '" + s + "'");
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) throw Error(ErrorKind::ParseError, "unterminated quote");
    return fields;
}

std::string write_human(const std::vector<ReportRecord>& records) {
    std::ostringstream os;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-16s %3s %5s | %10s %10s %10s %5s | %10s %10s %10s %5s | %10s | %s\n", "label",
                  "dim", "class", "C_l1", "Ca_l1", "bound_l1", "exact", "C_r", "Ca_r", "S(diag)", "exact", "N_a(mc)",
                  "checks");
    os << buf;
    os << std::string(std::string_view(buf).size() - 1, '-') << "\n";
    for (const auto& r : records) {
        std::string checks;
        checks += r.sandwich_ok ? "sandwich:ok " : "sandwich:FAIL ";
        checks += r.strict_ok ? "strict:ok " : "strict:FAIL ";
        checks += r.dominance_ok ? "dominance:ok " : "dominance:FAIL ";
        checks += r.range_ok ? "range:ok" : "range:FAIL";
        std::snprintf(buf, sizeof buf,
                      "%-16s %3zu %5s | %10.6f %10.6f %10.6f %5s | %10.6f %10.6f %10.6f %5s | %10.6f | %s\n",
                      r.label.c_str(), r.dim, std::string(to_string(r.state_class)).c_str(), r.c_l1, r.ca_l1_lower,
                      r.ca_l1_upper, flag(r.ca_l1_exact), r.c_rel_ent, r.ca_r_lower, r.ca_r_upper,
                      flag(r.ca_r_exact), r.negativity_of_assistance, checks.c_str());
        os << buf;
    }
    return os.str();
}

}  // namespace

std::string write_report(const std::vector<ReportRecord>& records, ReportFormat format) {
    std::ostringstream os;
    switch (format) {
        case ReportFormat::HumanTable:
            return write_human(records);
        case ReportFormat::Csv: {
            const auto& cols = csv_columns();
            for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
            os << "\n";
            for (const auto& r : records) {
                os << csv_quote(r.label) << "," << r.dim << "," << format_double(r.c_l1) << ","
                   << format_double(r.c_rel_ent) << "," << format_double(r.ca_l1_lower) << ","
                   << format_double(r.ca_l1_upper) << "," << flag(r.ca_l1_exact) << ","
                   << format_double(r.ca_r_lower) << "," << format_double(r.ca_r_upper) << "," << flag(r.ca_r_exact)
                   << "," << to_string(r.state_class) << "," << format_double(r.accessible_l1) << ","
                   << format_double(r.accessible_rel_ent) << "," << format_double(r.negativity_of_assistance) << ","
                   << flag(r.sandwich_ok) << "," << flag(r.strict_ok) << "," << flag(r.dominance_ok) << "," << flag(r.range_ok) << "\n";
            }
            return os.str();
        }
        case ReportFormat::JsonLines:
            for (const auto& r : records) os << to_json(r).dump() << "\n";
            return os.str();
    }
    return {};
}

std::string write_report_footer(const std::vector<ReportRecord>& records) {
    const auto verdict = [](bool b) { return b ? "pass" : "FAIL"; };
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& r : records) {
        const bool all = r.sandwich_ok && r.strict_ok && r.dominance_ok && r.range_ok;
        passed += all;
        os << "# " << r.label << ": sandwich " << verdict(r.sandwich_ok) << ", strict " << verdict(r.strict_ok)
           << ", dominance " << verdict(r.dominance_ok) << ", range " << verdict(r.range_ok) << "\n";
    }
    os << "# relations hold for " << passed << "/" << records.size() << " states\n";
    return os.str();
}

std::vector<ReportRecord> read_report_csv(std::string_view text) {
    std::vector<std::string> lines;
    {
        std::string line;
        std::istringstream in{std::string(text)};
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line[0] != '#') lines.push_back(line);
        }
    }
    if (lines.empty()) throw Error(ErrorKind::ParseError, "missing CSV header");
    if (split_csv_line(lines[0]) != csv_columns()) throw Error(ErrorKind::ParseError, "unexpected CSV header");

    std::vector<ReportRecord> out;
    for (std::size_t n = 1; n < lines.size(); ++n) {
        const auto f = split_csv_line(lines[n]);
        if (f.size() != csv_columns().size()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(n + 1) + " has " + std::to_string(f.size()) +
                                                   " fields");
        }
        ReportRecord r;
        r.label = f[0];
        r.dim = static_cast<std::size_t>(parse_double(f[1]));
        r.c_l1 = parse_double(f[2]);
        r.c_rel_ent = parse_double(f[3]);
        r.ca_l1_lower = parse_double(f[4]);
        r.ca_l1_upper = parse_double(f[5]);
        r.ca_l1_exact = parse_flag(f[6]);
        r.ca_r_lower = parse_double(f[7]);
        r.ca_r_upper = parse_double(f[8]);
        r.ca_r_exact = parse_flag(f[9]);
        r.state_class = parse_class(f[10]);
        r.accessible_l1 = parse_double(f[11]);
        r.accessible_rel_ent = parse_double(f[12]);
        r.negativity_of_assistance = parse_double(f[13]);
        r.sandwich_ok = parse_flag(f[14]);
        r.strict_ok = parse_flag(f[15]);
        r.dominance_ok = parse_flag(f[16]);
        r.range_ok = parse_flag(f[17]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ReportRecord> read_report_jsonl(std::string_view text) {
    std::vector<ReportRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        try {
            const json j = json::parse(line);
            ReportRecord r;
            r.label = j.at("label").get<std::string>();
            r.dim = j.at("dim").get<std::size_t>();
            r.c_l1 = j.at("c_l1").get<double>();
            r.c_rel_ent = j.at("c_rel_ent").get<double>();
            r.ca_l1_lower = j.at("ca_l1_lower").get<double>();
            r.ca_l1_upper = j.at("ca_l1_upper").get<double>();
            r.ca_l1_exact = j.at("ca_l1_exact").get<bool>();
            r.ca_r_lower = j.at("ca_r_lower").get<double>();
            r.ca_r_upper = j.at("ca_r_upper").get<double>();
            r.ca_r_exact = j.at("ca_r_exact").get<bool>();
            r.state_class = parse_class(j.at("class").get<std::string>());
            r.accessible_l1 = j.at("accessible_l1").get<double>();
            r.accessible_rel_ent = j.at("accessible_rel_ent").get<double>();
            r.negativity_of_assistance = j.at("negativity_of_assistance").get<double>();
            r.sandwich_ok = j.at("sandwich_ok").get<bool>();
            r.strict_ok = j.at("strict_ok").get<bool>();
            r.dominance_ok = j.at("dominance_ok").get<bool>();
            r.range_ok = j.at("range_ok").get<bool>();
            out.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, e.what());
        }
    }
    return out;
}

}  // namespace coa::io
