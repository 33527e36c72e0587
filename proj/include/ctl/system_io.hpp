#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ctl/spectral.hpp"
#include "ctl/system.hpp"

namespace ctl {

/// Jordan structure pinned by the input document instead of detected
/// numerically. Refers to the system matrix A as given.
struct DeclaredJordan {
    std::vector<JordanBlock> blocks;
    Matrix P;
};

/// One system document: the pair (A, B), an optional declared Jordan
/// structure and free-form labels echoed through to reports.
struct SystemFile {
    LdtSystem system;
    std::optional<DeclaredJordan> jordan;
    nlohmann::json labels; // null when absent
};

namespace io_detail {

inline Matrix parse_matrix(const nlohmann::json& j, const std::string& name)
{
    if (!j.is_array() || j.empty())
        throw ParseError(name + " must be a non-empty array of rows");
    const size_t rows = j.size();
    size_t cols = 0;
    for (size_t r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || row.empty())
            throw ParseError(name + " row " + std::to_string(r) + " must be a non-empty array");
        if (r == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw ParseError(name + " rows have inconsistent lengths");
        for (const auto& v : row)
            if (!v.is_number())
                throw ParseError(name + " contains a non-numeric entry");
    }
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    return m;
}

inline nlohmann::json matrix_to_json(const Matrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace io_detail

inline SystemFile parse_system_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ParseError("system document must be a JSON object");
    if (!j.contains("A") || !j.contains("B"))
        throw ParseError("system document needs keys \"A\" and \"B\"");

    const Matrix a = io_detail::parse_matrix(j["A"], "A");
    const Matrix b = io_detail::parse_matrix(j["B"], "B");
    if (a.rows() != a.cols())
        throw ParseError("A must be square");
    if (b.rows() != a.rows())
        throw ParseError("B must have as many rows as A");

    std::optional<DeclaredJordan> jordan;
    if (j.contains("jordan") && !j["jordan"].is_null()) {
        const auto& jj = j["jordan"];
        if (!jj.is_object() || !jj.contains("blocks") || !jj.contains("P"))
            throw ParseError("jordan declaration needs keys \"blocks\" and \"P\"");
        DeclaredJordan dj;
        if (!jj["blocks"].is_array() || jj["blocks"].empty())
            throw ParseError("jordan.blocks must be a non-empty array");
        int total = 0;
        for (const auto& bj : jj["blocks"]) {
            if (!bj.is_object() || !bj.contains("lambda") || !bj.contains("size"))
                throw ParseError("each jordan block needs \"lambda\" and \"size\"");
            JordanBlock blk;
            blk.lambda = bj["lambda"].get<double>();
            blk.size = bj["size"].get<int>();
            if (blk.size < 1)
                throw ParseError("jordan block sizes must be positive");
            total += blk.size;
            dj.blocks.push_back(blk);
        }
        if (total != a.rows())
            throw ParseError("jordan block sizes must sum to the system order");
        dj.P = io_detail::parse_matrix(jj["P"], "jordan.P");
        if (dj.P.rows() != a.rows() || dj.P.cols() != a.cols())
            throw ParseError("jordan.P must match the system order");
        jordan = std::move(dj);
    }

    SystemFile out{LdtSystem(a, b), std::move(jordan),
                   j.contains("labels") ? j["labels"] : nlohmann::json()};
    return out;
}

inline SystemFile load_system_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open system file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return parse_system_json(j);
}

inline nlohmann::json system_to_json(const SystemFile& sf)
{
    nlohmann::json j;
    j["A"] = io_detail::matrix_to_json(sf.system.A());
    j["B"] = io_detail::matrix_to_json(sf.system.B());
    if (sf.jordan) {
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& b : sf.jordan->blocks)
            blocks.push_back({{"lambda", b.lambda}, {"size", b.size}});
        j["jordan"] = {{"blocks", std::move(blocks)},
                       {"P", io_detail::matrix_to_json(sf.jordan->P)}};
    }
    if (!sf.labels.is_null())
        j["labels"] = sf.labels;
    return j;
}

inline void write_system_file(const SystemFile& sf, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write system file: " + path);
    out << system_to_json(sf).dump(2) << "\n";
}

} // namespace ctl
