#include "dta/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "dta/error.hpp"

namespace dta {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadFileError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadFileError("cannot open: " + path);
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    // Fields with quotes follow the usual doubling convention; only the
    // params_json column ever needs them.
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& path, std::size_t lineno) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || errno == ERANGE)
        throw BadFileError(path + ":" + std::to_string(lineno) + ": not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& path, std::size_t lineno) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw BadFileError(path + ":" + std::to_string(lineno) + ": not an integer: '" + s + "'");
    return v;
}

}  // namespace

void write_domain_csv(const std::string& path, const DomainData& d, const std::string& label_col) {
    auto out = open_out(path);
    for (Index j = 0; j < d.x.cols(); ++j) out << (j ? "," : "") << "feat_" << j;
    if (d.has_labels()) out << "," << label_col;
    out << "\n";
    for (Index i = 0; i < d.x.rows(); ++i) {
        for (Index j = 0; j < d.x.cols(); ++j) out << (j ? "," : "") << format_double(d.x(i, j));
        if (d.has_labels()) out << "," << d.labels[static_cast<std::size_t>(i)];
        out << "\n";
    }
}

DomainData read_domain_csv(const std::string& path, const std::string& label_col) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw BadFileError(path + ": empty file");
    const auto header = split_csv_line(line);
    Index label_idx = -1;
    std::vector<Index> feat_idx;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == label_col)
            label_idx = static_cast<Index>(c);
        else
            feat_idx.push_back(static_cast<Index>(c));
    }
    if (feat_idx.empty()) throw BadFileError(path + ": no feature columns");

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t lineno = 1;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw BadFileError(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()));
        for (const Index c : feat_idx)
            values.push_back(parse_double(fields[static_cast<std::size_t>(c)], path, lineno));
        if (label_idx >= 0)
            labels.push_back(static_cast<int>(
                parse_int(fields[static_cast<std::size_t>(label_idx)], path, lineno)));
        ++rows;
    }
    if (rows == 0) throw BadFileError(path + ": no data rows");

    DomainData d;
    d.x = Matrix(static_cast<Index>(rows), static_cast<Index>(feat_idx.size()));
    std::copy(values.begin(), values.end(), d.x.data());
    d.labels = std::move(labels);
    return d;
}

void write_pairs_csv(const std::string& path, const std::vector<std::pair<Index, Index>>& pairs) {
    auto out = open_out(path);
    out << "i,j\n";
    for (const auto& [i, j] : pairs) out << i << "," << j << "\n";
}

std::vector<std::pair<Index, Index>> read_pairs_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw BadFileError(path + ": empty file");
    std::vector<std::pair<Index, Index>> pairs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw BadFileError(path + ":" + std::to_string(lineno) + ": expected 2 fields");
        pairs.emplace_back(parse_int(fields[0], path, lineno), parse_int(fields[1], path, lineno));
    }
    return pairs;
}

void write_plan_csv(const std::string& path, const Matrix& plan) {
    auto out = open_out(path);
    out << "row,col,mass\n";
    for (Index i = 0; i < plan.rows(); ++i)
        for (Index j = 0; j < plan.cols(); ++j)
            if (plan(i, j) != 0.0)
                out << i << "," << j << "," << format_double(plan(i, j)) << "\n";
}

Matrix read_plan_csv(const std::string& path, Index rows, Index cols) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw BadFileError(path + ": empty file");
    Matrix plan(rows, cols);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw BadFileError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
        const Index i = parse_int(fields[0], path, lineno);
        const Index j = parse_int(fields[1], path, lineno);
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw BadFileError(path + ":" + std::to_string(lineno) + ": index out of range");
        plan(i, j) = parse_double(fields[2], path, lineno);
    }
    return plan;
}

void write_curve_csv(const std::string& path, const std::vector<MassCurvePoint>& curve) {
    auto out = open_out(path);
    out << "mass,ntc\n";
    for (const auto& p : curve)
        out << format_double(p.mass) << "," << format_double(p.ntc) << "\n";
}

void write_embedding_csv(const std::string& path, const Embedding& emb) {
    auto out = open_out(path);
    out << "domain,row_index";
    for (Index k = 0; k < emb.coords.cols(); ++k) out << ",coord_" << k;
    out << "\n";
    for (Index i = 0; i < emb.coords.rows(); ++i) {
        const bool first = i < emb.n1;
        out << (first ? 1 : 2) << "," << (first ? i : i - emb.n1);
        for (Index k = 0; k < emb.coords.cols(); ++k) out << "," << format_double(emb.coords(i, k));
        out << "\n";
    }
}

void write_matrix_csv(const std::string& path, const Matrix& m, const std::string& col_prefix) {
    auto out = open_out(path);
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << col_prefix << j;
    out << "\n";
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
        out << "\n";
    }
}

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
    auto out = open_out(path);
    out << "metric,value,seed,params_json\n";
    for (const auto& r : rows) {
        std::string quoted = "\"";
        for (const char ch : r.params_json) {
            quoted += ch;
            if (ch == '"') quoted += '"';
        }
        quoted += '"';
        out << r.metric << "," << format_double(r.value) << "," << r.seed << "," << quoted << "\n";
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace dta
