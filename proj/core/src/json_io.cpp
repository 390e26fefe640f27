#include "robh2/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace robh2 {

namespace {

using nlohmann::ordered_json;

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const ordered_json& j, int rows, int cols, const std::string& name) {
    if (!j.is_array()) throw DimensionMismatch("matrix " + name + " must be an array of rows");
    if (static_cast<int>(j.size()) != rows)
        throw DimensionMismatch("matrix " + name + " must have " + std::to_string(rows) +
                                " rows");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw DimensionMismatch("matrix " + name + " row " + std::to_string(i) +
                                    " must have " + std::to_string(cols) + " entries");
        for (int jcol = 0; jcol < cols; ++jcol) {
            if (!row.at(jcol).is_number())
                throw NonFiniteResult("matrix " + name + " has a non-numeric entry");
            const double v = row.at(jcol).get<double>();
            if (!std::isfinite(v))
                throw NonFiniteResult("matrix " + name + " has a non-finite entry");
            m(i, jcol) = v;
        }
    }
    return m;
}

Matrix optional_matrix(const ordered_json& j, const char* key, int rows, int cols) {
    if (!j.contains(key)) return Matrix::Zero(rows, cols);
    return matrix_from_json(j.at(key), rows, cols, key);
}

}  // namespace

std::string plant_to_json(const LftPlant& p) {
    ordered_json j;
    j["n"] = p.n;
    j["np"] = p.np;
    j["nd"] = p.nd;
    j["ne"] = p.ne;
    j["nu"] = p.nu;
    j["ny"] = p.ny;
    j["ts"] = p.sample_time;
    j["A"] = matrix_to_json(p.A);
    j["B0"] = matrix_to_json(p.B0);
    j["B1"] = matrix_to_json(p.B1);
    j["B2"] = matrix_to_json(p.B2);
    j["C0"] = matrix_to_json(p.C0);
    j["D00"] = matrix_to_json(p.D00);
    j["D02"] = matrix_to_json(p.D02);
    j["C1"] = matrix_to_json(p.C1);
    j["D10"] = matrix_to_json(p.D10);
    j["D12"] = matrix_to_json(p.D12);
    j["C2"] = matrix_to_json(p.C2);
    j["D20"] = matrix_to_json(p.D20);
    j["D21"] = matrix_to_json(p.D21);
    j["structure"] = {{"scalar_blocks", p.structure.scalar_blocks},
                      {"full_blocks", p.structure.full_blocks}};
    if (p.structure.doubled) j["structure"]["doubled"] = true;
    return j.dump(2) + "\n";
}

LftPlant plant_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::out_of_range& e) {
        throw NonFiniteResult(std::string("number out of range: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw StructuralViolation(std::string("invalid JSON: ") + e.what());
    }
    for (const char* key : {"n", "np", "nd", "ne", "nu", "ny"})
        if (!j.contains(key) || !j.at(key).is_number_integer())
            throw DimensionMismatch(std::string("plant JSON needs integer field ") + key);

    LftPlant p = LftPlant::zero(j["n"].get<int>(), j["np"].get<int>(), j["nd"].get<int>(),
                                j["ne"].get<int>(), j["nu"].get<int>(), j["ny"].get<int>());
    p.sample_time = j.value("ts", 0.0);
    p.A = optional_matrix(j, "A", p.n, p.n);
    p.B0 = optional_matrix(j, "B0", p.n, p.np);
    p.B1 = optional_matrix(j, "B1", p.n, p.nd);
    p.B2 = optional_matrix(j, "B2", p.n, p.nu);
    p.C0 = optional_matrix(j, "C0", p.np, p.n);
    p.D00 = optional_matrix(j, "D00", p.np, p.np);
    p.D01 = optional_matrix(j, "D01", p.np, p.nd);
    p.D02 = optional_matrix(j, "D02", p.np, p.nu);
    p.C1 = optional_matrix(j, "C1", p.ne, p.n);
    p.D10 = optional_matrix(j, "D10", p.ne, p.np);
    p.D11 = optional_matrix(j, "D11", p.ne, p.nd);
    p.D12 = optional_matrix(j, "D12", p.ne, p.nu);
    p.C2 = optional_matrix(j, "C2", p.ny, p.n);
    p.D20 = optional_matrix(j, "D20", p.ny, p.np);
    p.D21 = optional_matrix(j, "D21", p.ny, p.nd);
    p.D22 = optional_matrix(j, "D22", p.ny, p.nu);

    if (j.contains("structure")) {
        const auto& s = j.at("structure");
        p.structure.scalar_blocks = s.value("scalar_blocks", std::vector<int>{});
        p.structure.full_blocks = s.value("full_blocks", std::vector<int>{});
        p.structure.doubled = s.value("doubled", false);
    } else if (p.np > 0) {
        throw DimensionMismatch("plant JSON with np > 0 needs a structure field");
    }
    return p;
}

std::string controller_to_json(const ControllerFile& c) {
    ordered_json j;
    if (c.type == ControllerFile::Type::state_feedback) {
        j["type"] = "state_feedback";
        j["F"] = matrix_to_json(c.F);
    } else {
        j["type"] = "lft_output_feedback";
        j["nk"] = c.lft.nk;
        j["Ak"] = matrix_to_json(c.lft.Ak);
        j["Bk1"] = matrix_to_json(c.lft.Bk1);
        j["Bk0"] = matrix_to_json(c.lft.Bk0);
        j["Ck1"] = matrix_to_json(c.lft.Ck1);
        j["Ck0"] = matrix_to_json(c.lft.Ck0);
        j["Dk10"] = matrix_to_json(c.lft.Dk10);
        j["Dk00"] = matrix_to_json(c.lft.Dk00);
    }
    return j.dump(2) + "\n";
}

ControllerFile controller_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw StructuralViolation(std::string("invalid JSON: ") + e.what());
    }
    ControllerFile c;
    const std::string type = j.value("type", "");
    if (type == "state_feedback") {
        c.type = ControllerFile::Type::state_feedback;
        if (!j.contains("F")) throw DimensionMismatch("state_feedback controller needs F");
        const auto& f = j.at("F");
        const int rows = static_cast<int>(f.size());
        const int cols = rows > 0 ? static_cast<int>(f.at(0).size()) : 0;
        c.F = matrix_from_json(f, rows, cols, "F");
    } else if (type == "lft_output_feedback") {
        c.type = ControllerFile::Type::lft_output_feedback;
        if (!j.contains("nk") || !j.at("nk").is_number_integer())
            throw DimensionMismatch("lft controller needs integer nk");
        const int nk = j["nk"].get<int>();
        auto dims = [&](const char* key, int& rows, int& cols) {
            if (!j.contains(key)) throw DimensionMismatch(std::string("controller needs ") + key);
            const auto& mj = j.at(key);
            rows = static_cast<int>(mj.size());
            cols = rows > 0 ? static_cast<int>(mj.at(0).size()) : 0;
        };
        int r, cc;
        c.lft.nk = nk;
        dims("Ak", r, cc);
        c.lft.Ak = matrix_from_json(j["Ak"], nk, nk, "Ak");
        dims("Bk1", r, cc);
        c.lft.Bk1 = matrix_from_json(j["Bk1"], nk, cc, "Bk1");
        dims("Bk0", r, cc);
        c.lft.Bk0 = matrix_from_json(j["Bk0"], nk, cc, "Bk0");
        dims("Ck1", r, cc);
        c.lft.Ck1 = matrix_from_json(j["Ck1"], r, nk, "Ck1");
        dims("Ck0", r, cc);
        c.lft.Ck0 = matrix_from_json(j["Ck0"], r, nk, "Ck0");
        dims("Dk10", r, cc);
        c.lft.Dk10 = matrix_from_json(j["Dk10"], r, cc, "Dk10");
        dims("Dk00", r, cc);
        c.lft.Dk00 = matrix_from_json(j["Dk00"], r, cc, "Dk00");
    } else {
        throw StructuralViolation("controller JSON needs type state_feedback or "
                                  "lft_output_feedback");
    }
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a:") + buf;
}

}  // namespace robh2
