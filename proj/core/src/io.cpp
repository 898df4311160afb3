#include "tjade/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace tjade {

namespace {

using nlohmann::json;

std::vector<double> parse_csv_line(const std::string& line, std::int64_t lineno) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        const std::string field = line.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(field, &used));
            while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw ArgumentError("line " + std::to_string(lineno) + ": bad numeric field '" + field + "'");
        }
        pos = comma + 1;
        if (comma == line.size()) break;
    }
    return out;
}

json matrix_to_json(const Matrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["data"] = std::vector<double>(m.data(), m.data() + m.size());  // column-major
    return j;
}

Matrix matrix_from_json(const json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const std::vector<double> data = j.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw ArgumentError("model json: matrix data length mismatch");
    return Eigen::Map<const Matrix>(data.data(), rows, cols);
}

}  // namespace

Matrix read_csv_matrix(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(parse_csv_line(line, lineno));
        if (rows.size() > 1 && rows.back().size() != rows.front().size())
            throw ArgumentError("line " + std::to_string(lineno) + ": ragged row (" +
                                std::to_string(rows.back().size()) + " fields, expected " +
                                std::to_string(rows.front().size()) + ")");
    }
    if (rows.empty()) throw ArgumentError("empty matrix file");
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

void write_csv_matrix(std::ostream& os, const Matrix& m) {
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            os << buf << (j + 1 < m.cols() ? "," : "");
        }
        os << '\n';
    }
}

Sample read_vectorized_sample(std::istream& is, const std::vector<int>& dims) {
    Matrix rows = read_csv_matrix(is);
    std::int64_t sz = 1;
    for (int p : dims) sz *= p;
    if (rows.cols() != sz)
        throw ArgumentError("data has " + std::to_string(rows.cols()) +
                            " fields per line, expected " + std::to_string(sz) + " for the given dims");
    Sample s(dims, rows.rows());
    s.data() = rows.transpose();
    return s;
}

std::string model_to_json(const UnmixingModel& model) {
    json j;
    j["schema"] = 1;
    j["method"] = model.method;
    j["c"] = model.c;
    j["dims"] = model.dims;
    const auto loc = model.location.vec();
    j["location"] = std::vector<double>(loc.data(), loc.data() + loc.size());
    j["phis"] = json::array();
    for (const Matrix& phi : model.phis) j["phis"].push_back(matrix_to_json(phi));
    j["tau_sq"] = model.tau_sq;
    j["face_kurtosis"] = json::array();
    for (const Vector& v : model.face_kurtosis)
        j["face_kurtosis"].push_back(std::vector<double>(v.data(), v.data() + v.size()));
    j["diagnostics"] = json::array();
    for (const ModeDiagnostics& d : model.diagnostics)
        j["diagnostics"].push_back({{"sweeps", d.sweeps},
                                    {"final_off", d.final_off},
                                    {"converged", d.converged},
                                    {"degenerate", d.degenerate}});
    return j.dump(2);
}

UnmixingModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("model json parse error: ") + e.what());
    }
    try {
        if (j.at("schema").get<int>() != 1)
            throw ArgumentError("model json: unsupported schema version");
        UnmixingModel model;
        model.method = j.at("method").get<std::string>();
        model.c = j.at("c").get<int>();
        model.dims = j.at("dims").get<std::vector<int>>();
        const std::vector<double> loc = j.at("location").get<std::vector<double>>();
        model.location = Tensor(model.dims, loc);
        for (const json& p : j.at("phis")) model.phis.push_back(matrix_from_json(p));
        model.tau_sq = j.at("tau_sq").get<std::vector<double>>();
        for (const json& v : j.at("face_kurtosis")) {
            const std::vector<double> k = v.get<std::vector<double>>();
            model.face_kurtosis.push_back(
                Eigen::Map<const Vector>(k.data(), static_cast<Eigen::Index>(k.size())));
        }
        for (const json& d : j.at("diagnostics")) {
            ModeDiagnostics md;
            md.sweeps = d.at("sweeps").get<int>();
            md.final_off = d.at("final_off").get<double>();
            md.converged = d.at("converged").get<bool>();
            md.degenerate = d.at("degenerate").get<bool>();
            model.diagnostics.push_back(md);
        }
        return model;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("model json error: ") + e.what());
    }
}

}  // namespace tjade
