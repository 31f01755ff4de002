#include "toral/field_io.hpp"

#include <fstream>

#include "toral/errors.hpp"

namespace toral {

namespace {

using nlohmann::json;

const json& member(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ValidationError(std::string("missing key \"") + key + "\"");
    return obj.at(key);
}

int as_int(const json& v, const char* key) {
    if (!v.is_number_integer()) throw ValidationError(std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ValidationError("\"" + key + "\" must be a number");
    return v.get<double>();
}

Eigen::MatrixXd as_matrix(const json& v, const std::string& key, int rows, int cols) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows)
        throw ValidationError("\"" + key + "\" must have " + std::to_string(rows) + " rows");
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = v[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ValidationError("\"" + key + "\" row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (int j = 0; j < cols; ++j) m(i, j) = as_number(row[j], key);
    }
    return m;
}

BigInt as_bigint(const json& v) {
    if (v.is_number_integer()) return BigInt(v.get<long long>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const bool ok = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                        s != "-";
        if (ok) return BigInt(s);
    }
    throw ValidationError("\"discriminant\" must be an integer");
}

} // namespace

NumberFieldData parse_field(const json& doc) {
    if (!doc.is_object()) throw ValidationError("field document must be a JSON object");
    NumberFieldData f;
    f.n = as_int(member(doc, "degree"), "degree");
    f.r1 = as_int(member(doc, "r1"), "r1");
    f.r2 = as_int(member(doc, "r2"), "r2");
    if (f.n < 1 || f.r1 < 0 || f.r2 < 0 || f.n != f.r1 + 2 * f.r2)
        throw ValidationError("signature: degree must equal r1 + 2 r2");
    f.discriminant = as_bigint(member(doc, "discriminant"));
    f.w = as_int(member(doc, "w"), "w");
    f.regulator = as_number(member(doc, "regulator"), "regulator");
    const int rank = f.r1 + f.r2 - 1;
    f.unit_log_basis = as_matrix(member(doc, "unit_log_basis"), "unit_log_basis", rank, f.r1 + f.r2);

    const json& cg = member(doc, "class_group");
    const json& orders = member(cg, "cyclic_orders");
    if (!orders.is_array() || orders.empty()) throw ValidationError("\"cyclic_orders\" must be a non-empty array");
    for (const auto& o : orders) f.cyclic_orders.push_back(as_int(o, "cyclic_orders"));
    const json& classes = member(cg, "classes");
    if (!classes.is_array() || classes.empty()) throw ValidationError("\"classes\" must be a non-empty array");
    for (const auto& c : classes) {
        const json& label = member(c, "label");
        if (!label.is_string()) throw ValidationError("\"label\" must be a string");
        const json& norm = member(c, "norm");
        if (!norm.is_string()) throw ValidationError("\"norm\" must be a string \"p/q\"");
        std::vector<int> coords;
        const json& cj = member(c, "coords");
        if (!cj.is_array()) throw ValidationError("\"coords\" must be an array");
        for (const auto& x : cj) coords.push_back(as_int(x, "coords"));
        Eigen::MatrixXd basis = as_matrix(member(c, "embedded_basis"), "embedded_basis", f.n, f.n);
        try {
            f.classes.push_back({label.get<std::string>(), LatticeBasis(basis), parse_rational(norm.get<std::string>()),
                                 std::move(coords)});
        } catch (const DegenerateBasisError& e) {
            throw ValidationError(std::string("embedded_basis: ") + e.what());
        }
    }
    require_valid(f);
    return f;
}

NumberFieldData load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open field document " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("field document is not valid JSON: ") + e.what());
    }
    return parse_field(doc);
}

json field_to_json(const NumberFieldData& field) {
    json doc;
    doc["degree"] = field.n;
    doc["r1"] = field.r1;
    doc["r2"] = field.r2;
    if (boost::multiprecision::abs(field.discriminant) < BigInt(1LL << 62))
        doc["discriminant"] = field.discriminant.convert_to<long long>();
    else
        doc["discriminant"] = field.discriminant.str();
    doc["w"] = field.w;
    doc["regulator"] = field.regulator;
    json units = json::array();
    for (int i = 0; i < field.unit_log_basis.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < field.unit_log_basis.cols(); ++j) row.push_back(field.unit_log_basis(i, j));
        units.push_back(row);
    }
    doc["unit_log_basis"] = units;
    json classes = json::array();
    for (const auto& c : field.classes) {
        json basis = json::array();
        for (int i = 0; i < c.embedded_basis.rank(); ++i) {
            json row = json::array();
            for (int j = 0; j < c.embedded_basis.ambient_dim(); ++j) row.push_back(c.embedded_basis.rows()(i, j));
            basis.push_back(row);
        }
        classes.push_back({{"label", c.label}, {"coords", c.coords}, {"norm", c.norm.to_string()}, {"embedded_basis", basis}});
    }
    doc["class_group"] = {{"cyclic_orders", field.cyclic_orders}, {"classes", classes}};
    return doc;
}

} // namespace toral
