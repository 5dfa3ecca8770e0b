#include "alphanorm/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "alphanorm/errors.hpp"
#include "json.hpp"

namespace alphanorm {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Eigen::Index dim_value(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 1) {
        throw ParseError(std::string(what) + " must be a positive integer");
    }
    return static_cast<Eigen::Index>(j.get<long long>());
}

RealMatrix real_part(const json& j, Eigen::Index rows, Eigen::Index cols, const char* key) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        throw ParseError(std::string("'") + key + "' must have " + std::to_string(rows) + " rows");
    }
    RealMatrix out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ParseError(std::string("'") + key + "' row " + std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw ParseError(std::string("'") + key + "' entries must be numbers");
            out(r, c) = v.get<double>();
        }
    }
    return out;
}

ComplexMatrix matrix_from(const json& j) {
    const Eigen::Index rows = dim_value(field(j, "rows"), "rows");
    const Eigen::Index cols = dim_value(field(j, "cols"), "cols");
    const RealMatrix re = real_part(field(j, "re"), rows, cols, "re");
    const RealMatrix im = j.contains("im") ? real_part(j.at("im"), rows, cols, "im") : RealMatrix::Zero(rows, cols);
    ComplexMatrix m(rows, cols);
    m.real() = re;
    m.imag() = im;
    try {
        validate(m);
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    return m;
}

ojson matrix_to(const ComplexMatrix& m) {
    ojson re = ojson::array(), im = ojson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ojson rr = ojson::array(), ir = ojson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ir.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ojson block_matrix_to(const BlockMatrix& t) {
    ojson blocks = ojson::array();
    for (std::size_t i = 0; i < t.n(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < t.n(); ++j) row.push_back(matrix_to(t.block(i, j)));
        blocks.push_back(std::move(row));
    }
    return {{"row_dims", t.row_dims()}, {"col_dims", t.col_dims()}, {"blocks", std::move(blocks)}};
}

ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson record_to(const CheckRecord& r, bool with_input) {
    ojson j = {
        {"check_id", r.check_id},
        {"seed", r.seed},
        {"theorem", r.theorem},
        {"alpha", optional_number(r.alpha)},
        {"p", optional_number(r.p)},
        {"s", optional_number(r.s)},
        {"lhs", r.lhs},
        {"rhs", r.rhs},
        {"relation", r.relation},
        {"slack", r.slack},
        {"tolerance", r.tolerance},
        {"tightness", optional_number(r.tightness)},
        {"verdict", to_string(r.verdict)},
    };
    if (!r.message.empty()) j["message"] = r.message;
    if (with_input && r.input) j["input"] = block_matrix_to(*r.input);
    return j;
}

std::string csv_number(const std::optional<double>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

}  // namespace

ComplexMatrix matrix_from_json(const std::string& text) { return matrix_from(parse(text)); }

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_to(m).dump(); }

BlockMatrix block_matrix_from_json(const std::string& text) {
    const json j = parse(text);
    const auto dims = [&](const char* key) {
        const json& d = field(j, key);
        if (!d.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
        std::vector<Eigen::Index> out;
        for (const json& v : d) out.push_back(dim_value(v, key));
        return out;
    };
    std::vector<Eigen::Index> row_dims = dims("row_dims");
    std::vector<Eigen::Index> col_dims = dims("col_dims");
    const json& rows = field(j, "blocks");
    if (!rows.is_array() || rows.size() != row_dims.size()) {
        throw ParseError("'blocks' must have one row per entry of row_dims");
    }
    std::vector<ComplexMatrix> blocks;
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != col_dims.size()) {
            throw ParseError("every row of 'blocks' must have one entry per entry of col_dims");
        }
        for (const json& b : row) blocks.push_back(matrix_from(b));
    }
    try {
        return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
    } catch (const DimensionError& e) {
        throw ParseError(e.what());
    }
}

std::string block_matrix_to_json(const BlockMatrix& t) { return block_matrix_to(t).dump(); }

std::string bound_report_to_json(const BoundReport& r) {
    const ojson j = {
        {"theorem", to_string(r.theorem)},
        {"alpha", r.alpha},
        {"p", optional_number(r.p)},
        {"s", optional_number(r.s)},
        {"value", r.value},
        {"reference", r.reference},
        {"tightness", optional_number(r.tightness)},
        {"cap", optional_number(r.cap)},
    };
    return j.dump();
}

std::string suite_report_to_json(const SuiteReport& r) {
    ojson records = ojson::array();
    for (const CheckRecord& rec : r.records) records.push_back(record_to(rec, rec.verdict != Verdict::pass));
    const SuiteSummary& s = r.summary;
    ojson tightness = ojson::object();
    for (const auto& [th, v] : s.mean_tightness) tightness[th] = v;
    const ojson summary = {
        {"total", s.total},
        {"passed", s.passed},
        {"failed", s.failed},
        {"errors", s.errors},
        {"min_slack", optional_number(s.min_slack)},
        {"mean_tightness", std::move(tightness)},
        {"worst", s.worst ? record_to(*s.worst, true) : ojson(nullptr)},
    };
    return ojson{{"records", std::move(records)}, {"summary", summary}}.dump(1);
}

void write_suite_csv(std::ostream& os, const SuiteReport& r) {
    os << kCsvHeader << '\n';
    for (const CheckRecord& rec : r.records) {
        os << rec.check_id << ',' << rec.seed << ',' << rec.theorem << ',' << csv_number(rec.alpha) << ','
           << csv_number(rec.p) << ',' << csv_number(rec.s) << ',' << csv_number(rec.lhs) << ','
           << csv_number(rec.rhs) << ',' << csv_number(rec.slack) << ',' << to_string(rec.verdict) << '\n';
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace alphanorm
