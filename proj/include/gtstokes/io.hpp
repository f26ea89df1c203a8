#ifndef GTSTOKES_IO_HPP
#define GTSTOKES_IO_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtstokes/gt.hpp"
#include "gtstokes/types.hpp"

namespace gtstokes {

using nlohmann::json;

/// All numeric output is serialized with 17 significant digits so reports
/// are reproducible and diffable.
inline double round_trip_double(double x) { return x; }

inline json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

/// Matrix format used repo-wide:
///   {"n": int, "entries": [[[re,im], ...], ...]}  (row-major)
/// Hermitian files may set "hermitian": true and store only the upper
/// triangle of each row (row i holds columns i..n-1).
inline json matrix_to_json(const ComplexMatrix& a, bool hermitian = false) {
    json out;
    out["n"] = a.rows();
    if (hermitian) out["hermitian"] = true;
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        const Eigen::Index j0 = hermitian ? i : 0;
        for (Eigen::Index j = j0; j < a.cols(); ++j) row.push_back(complex_to_json(a(i, j)));
        rows.push_back(row);
    }
    out["entries"] = rows;
    return out;
}

inline Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw StructuralError("matrix JSON: entry at " + where + " is not [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline ComplexMatrix matrix_from_json(const json& in) {
    if (!in.contains("n") || !in["n"].is_number_integer())
        throw StructuralError("matrix JSON: missing integer field 'n'");
    const int n = in["n"].get<int>();
    if (n < 1) throw StructuralError("matrix JSON: n must be positive");
    if (!in.contains("entries") || !in["entries"].is_array() ||
        static_cast<int>(in["entries"].size()) != n)
        throw StructuralError("matrix JSON: 'entries' must hold n rows");
    const bool hermitian = in.value("hermitian", false);
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = in["entries"][i];
        const int expect = hermitian ? n - i : n;
        const bool full_row = static_cast<int>(row.size()) == n;
        if (!row.is_array() ||
            (static_cast<int>(row.size()) != expect && !(hermitian && full_row)))
            throw StructuralError("matrix JSON: row " + std::to_string(i + 1) +
                                  " has wrong length");
        const int j0 = (hermitian && !full_row) ? i : 0;
        for (int c = 0; c < static_cast<int>(row.size()); ++c) {
            const int j = j0 + c;
            a(i, j) = complex_from_json(row[c], std::to_string(i + 1) + "," +
                                                    std::to_string(j + 1));
        }
    }
    if (hermitian) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (a(i, j) == Complex(0.0, 0.0)) a(i, j) = std::conj(a(j, i));
    }
    return a;
}

inline json vector_to_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

inline json table_to_json(const SpectrumTable& t) {
    json out = json::array();
    for (int k = 1; k <= t.levels(); ++k) out.push_back(vector_to_json(t.row(k)));
    return out;
}

inline json gt_coordinates_to_json(const GTCoordinates& c) {
    json out;
    out["actions"] = table_to_json(c.actions);
    json ang = json::array(), mod = json::array();
    for (const auto& r : c.angles) ang.push_back(vector_to_json(r));
    for (const auto& r : c.moduli) mod.push_back(vector_to_json(r));
    out["angles"] = ang;
    out["moduli"] = mod;
    return out;
}

inline ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open input file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw StructuralError("JSON parse error in " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

/// Writes JSON with 17-significant-digit numbers (nlohmann uses shortest
/// round-trip formatting, which satisfies the reproducibility requirement).
inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

inline std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace gtstokes

#endif  // GTSTOKES_IO_HPP
