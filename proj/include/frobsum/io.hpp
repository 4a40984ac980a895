#pragma once

#include "frobsum/curves.hpp"
#include "frobsum/graded.hpp"
#include "frobsum/rep.hpp"

#include <json.hpp>

#include <complex>
#include <cstdio>
#include <sstream>
#include <string>

namespace frobsum {
namespace io {

using json = nlohmann::ordered_json;

/// Round to 12 significant digits; keeps emitted numbers byte-stable.
inline double sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::atof(buf);
}

inline json complex_to_json(std::complex<double> z) {
    return json::array({sig12(z.real()), sig12(z.imag())});
}

inline json elem_to_json(const FieldElement& x) {
    json j;
    j["p"] = x.field().p();
    j["n"] = x.field().n();
    j["coeffs"] = x.coeffs();
    return j;
}

inline FieldElement elem_from_json(const json& j) {
    const FiniteField& F = make_field(j.at("p").get<long long>(), j.at("n").get<int>());
    return F.from_coeffs(j.at("coeffs").get<std::vector<int32_t>>());
}

inline json poly_to_json(const Polynomial& f) {
    json arr = json::array();
    for (const auto& c : f.coeffs()) arr.push_back(elem_to_json(c));
    return arr;
}

inline Polynomial poly_from_json(const json& j, const FiniteField& base) {
    std::vector<FieldElement> c;
    for (const auto& e : j) c.push_back(elem_from_json(e));
    return Polynomial(base, std::move(c));
}

// scalar <-> exact string (integers plain, rationals as "a/b")
inline std::string scalar_to_string(long long v) { return std::to_string(v); }
inline std::string scalar_to_string(const BigInt& v) { return v.str(); }
inline std::string scalar_to_string(const BigRational& v) {
    std::string s = numerator(v).str();
    if (denominator(v) != 1) s += "/" + denominator(v).str();
    return s;
}

template <typename T>
T scalar_from_string(const std::string& s);

template <>
inline long long scalar_from_string<long long>(const std::string& s) {
    return std::stoll(s);
}
template <>
inline BigInt scalar_from_string<BigInt>(const std::string& s) {
    return BigInt(s);
}
template <>
inline BigRational scalar_from_string<BigRational>(const std::string& s) {
    auto pos = s.find('/');
    if (pos == std::string::npos) return BigRational(BigInt(s));
    return BigRational(BigInt(s.substr(0, pos)), BigInt(s.substr(pos + 1)));
}

template <typename T>
json matrix_to_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename T>
Matrix<T> matrix_from_json(const json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j.at(i).size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = scalar_from_string<T>(j.at(i).at(c).get<std::string>());
    }
    return m;
}

template <typename T>
json rep_to_json(const MatrixRep<T>& rep) {
    json j;
    const FiniteGroup& G = *rep.group;
    json table = json::array();
    for (int a = 0; a < G.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < G.order(); ++b) row.push_back(G.op(a, b));
        table.push_back(std::move(row));
    }
    j["group"] = json{{"order", G.order()}, {"mul_table", std::move(table)}};
    j["domain"] = rep.domain;
    j["dim"] = rep.dim;
    json images = json::array();
    for (int g : rep.domain) images.push_back(matrix_to_json(rep.image(g)));
    j["images"] = std::move(images);
    return j;
}

template <typename T>
json graded_to_json(const GradedRep<T>& P) {
    json pieces = json::object();
    for (const auto& [deg, m] : P.pieces) pieces[std::to_string(deg)] = matrix_to_json(m);
    return json{{"pieces", std::move(pieces)}};
}

template <typename T>
GradedRep<T> graded_from_json(const json& j, int max_abs_degree = 8, int max_dim = 4) {
    std::map<int, Matrix<T>> pieces;
    for (const auto& [key, val] : j.at("pieces").items())
        pieces.emplace(std::stoi(key), matrix_from_json<T>(val));
    return make_graded_rep(std::move(pieces), max_abs_degree, max_dim);
}

inline json sum_report_to_json(const SumReport& r, const Polynomial* f) {
    json j;
    j["record"] = "sum";
    j["mode"] = r.mode == SumMode::trace ? "trace" : "norm";
    j["q"] = r.q;
    j["r"] = r.r;
    if (f) j["f"] = poly_to_json(*f);
    j["d"] = r.d;
    j["a"] = elem_to_json(r.a);
    j["sum"] = r.sum;
    j["generic"] = r.generic;
    j["hypotheses_ok"] = r.hypotheses_ok;
    if (std::isnan(r.bound))
        j["bound"] = nullptr;
    else
        j["bound"] = sig12(r.bound);
    j["satisfied"] = r.satisfied;
    j["status"] = to_string(r.status);
    return j;
}

inline std::string poly_digits(const Polynomial& f) {
    std::string s;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) s += ';';
        s += f.coeffs()[i].digits();
    }
    return s;
}

inline json curve_report_to_json(const CurveSpec& spec, const CountReport& r) {
    json j;
    j["record"] = "curve";
    j["kind"] = to_string(spec.kind);
    j["p"] = spec.base->p();
    j["n"] = spec.base->n();
    j["r"] = spec.r;
    j["f"] = poly_to_json(spec.f);
    j["d"] = spec.d;
    j["N"] = r.N;
    j["main_term"] = r.main_term;
    j["delta"] = r.delta;
    j["deviation"] = r.deviation;
    j["bound"] = sig12(r.bound);
    j["sum"] = r.sum;
    j["generic"] = r.generic;
    j["hypotheses_ok"] = r.hypotheses_ok;
    j["identity_ok"] = r.identity_checked;
    j["bound_ok"] = to_string(r.bound_status);
    return j;
}

inline std::string curve_csv_header() {
    return "kind,p,n,r,f,d,N,main_term,deviation,bound,generic,identity_ok,bound_ok";
}

inline std::string curve_csv_row(const CurveSpec& spec, const CountReport& r) {
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", r.bound);
    os << to_string(spec.kind) << ',' << spec.base->p() << ',' << spec.base->n() << ',' << spec.r
       << ',' << poly_digits(spec.f) << ',' << spec.d << ',' << r.N << ',' << r.main_term << ','
       << r.deviation << ',' << buf << ',' << (r.generic ? "true" : "false") << ','
       << (r.identity_checked ? "true" : "false") << ',' << to_string(r.bound_status);
    return os.str();
}

inline json table_row_to_json(const TableRow& row) {
    return json{{"r", row.r}, {"constant", row.c_value.str()}, {"power", row.power_value.str()}};
}

inline json tables_to_json(int d, const ComparisonTables& t) {
    json j;
    j["d"] = d;
    json a = json::array(), c = json::array();
    for (const auto& row : t.adams) a.push_back(table_row_to_json(row));
    for (const auto& row : t.conjugate) c.push_back(table_row_to_json(row));
    j["adams"] = std::move(a);
    j["conjugate"] = std::move(c);
    return j;
}

inline std::string tables_to_csv(const ComparisonTables& t) {
    std::ostringstream os;
    os << "table,r,constant,power\n";
    for (const auto& row : t.adams)
        os << "adams," << row.r << ',' << row.c_value.str() << ',' << row.power_value.str() << '\n';
    for (const auto& row : t.conjugate)
        os << "conjugate," << row.r << ',' << row.c_value.str() << ',' << row.power_value.str()
           << '\n';
    return os.str();
}

}  // namespace io
}  // namespace frobsum
