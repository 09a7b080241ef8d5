#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dta/alignment.hpp"
#include "dta/datasets.hpp"
#include "dta/matrix.hpp"
#include "dta/transport.hpp"

namespace dta {

// Round-trip-exact decimal rendering ("%.17g"); all writers use it so a rerun
// with identical inputs produces byte-identical files.
std::string format_double(double v);

// Feature table: header feat_0..feat_{p-1} plus an optional trailing label
// column.  Readers accept any numeric columns and pick labels by column name.
void write_domain_csv(const std::string& path, const DomainData& d,
                      const std::string& label_col = "label");
DomainData read_domain_csv(const std::string& path, const std::string& label_col = "label");

// Index pairs, header "i,j".
void write_pairs_csv(const std::string& path, const std::vector<std::pair<Index, Index>>& pairs);
std::vector<std::pair<Index, Index>> read_pairs_csv(const std::string& path);

// Sparse plan triplets, header "row,col,mass"; zeros are omitted.
void write_plan_csv(const std::string& path, const Matrix& plan);
Matrix read_plan_csv(const std::string& path, Index rows, Index cols);

// Mass-selection curve, header "mass,ntc".
void write_curve_csv(const std::string& path, const std::vector<MassCurvePoint>& curve);

// Joint embedding, header "domain,row_index,coord_0..coord_{d-1}".
void write_embedding_csv(const std::string& path, const Embedding& emb);

// Dense numeric table with an arbitrary header, used for projections.
void write_matrix_csv(const std::string& path, const Matrix& m, const std::string& col_prefix);

struct ReportRow {
    std::string metric;
    double value;
    std::uint64_t seed;
    std::string params_json;
};
// Metric rows, header "metric,value,seed,params_json"; the JSON field is
// quoted with doubled inner quotes.
void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace dta
