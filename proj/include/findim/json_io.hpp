#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <findim/complex.hpp>
#include <findim/errors.hpp>
#include <findim/filtration.hpp>
#include <findim/group_algebra.hpp>
#include <findim/matrix.hpp>
#include <findim/powers.hpp>
#include <findim/rational.hpp>
#include <findim/schur_split.hpp>

namespace findim {

// All machine-readable output uses ordered JSON so byte-for-byte output is
// reproducible; all scalars travel as "p/q" strings.
using Json = nlohmann::ordered_json;

inline Json dims_to_json(const std::map<int, int>& dims) {
    Json out = Json::object();
    for (const auto& [k, d] : dims) out[std::to_string(k)] = d;
    return out;
}

inline int degree_from_key(const std::string& key) {
    try {
        std::size_t used = 0;
        int value = std::stoi(key, &used);
        if (used != key.size()) throw SchemaError("bad degree key '" + key + "'");
        return value;
    } catch (const SchemaError&) {
        throw;
    } catch (...) {
        throw SchemaError("bad degree key '" + key + "'");
    }
}

inline std::map<int, int> dims_from_json(const Json& j, const std::string& what) {
    if (!j.is_object()) throw SchemaError(what + " must be an object of degree -> dimension");
    std::map<int, int> out;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number_integer() || value.get<long long>() < 0)
            throw SchemaError(what + "[" + key + "] must be a nonnegative integer");
        out.emplace(degree_from_key(key), value.get<int>());
    }
    return out;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
    if (!j.is_array() || j.size() != rows)
        throw SchemaError(what + " must be an array of " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw SchemaError(what + " row " + std::to_string(i) + " must have " + std::to_string(cols) +
                              " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& cell = row[c];
            if (cell.is_string())
                m(i, c) = rational_from_string(cell.get<std::string>());
            else if (cell.is_number_integer())
                m(i, c) = Rational(cell.get<long long>());
            else
                throw SchemaError(what + " entries must be rational strings");
        }
    }
    return m;
}

inline Json complex_to_json(const Complex& c) {
    Json out = Json::object();
    out["degrees"] = dims_to_json(c.dims());
    Json diffs = Json::object();
    for (const auto& [k, block] : c.stored_differentials()) diffs[std::to_string(k)] = matrix_to_json(block);
    out["differentials"] = std::move(diffs);
    return out;
}

inline Complex complex_from_json(const Json& j, const std::string& what) {
    if (!j.is_object()) throw SchemaError(what + " must be an object");
    if (!j.contains("degrees")) throw SchemaError(what + " is missing 'degrees'");
    std::map<int, int> dims = dims_from_json(j.at("degrees"), what + ".degrees");
    std::map<int, Matrix> diffs;
    if (j.contains("differentials")) {
        const Json& dj = j.at("differentials");
        if (!dj.is_object()) throw SchemaError(what + ".differentials must be an object");
        for (const auto& [key, value] : dj.items()) {
            int k = degree_from_key(key);
            std::size_t rows = dims.count(k - 1) ? dims.at(k - 1) : 0;
            std::size_t cols = dims.count(k) ? dims.at(k) : 0;
            diffs.emplace(k, matrix_from_json(value, rows, cols, what + ".differentials[" + key + "]"));
        }
    }
    try {
        return Complex(std::move(dims), std::move(diffs));
    } catch (const Error& e) {
        throw SchemaError(what + ": " + e.what());
    }
}

inline Json chain_map_blocks_to_json(const ChainMap& f) {
    Json blocks = Json::object();
    for (const auto& [k, block] : f.stored_blocks()) blocks[std::to_string(k)] = matrix_to_json(block);
    return blocks;
}

inline ChainMap chain_map_from_json(const Json& j, const Complex& source, const Complex& target,
                                    const std::string& what) {
    if (!j.is_object() || !j.contains("blocks"))
        throw SchemaError(what + " must be an object with 'blocks'");
    const Json& bj = j.at("blocks");
    if (!bj.is_object()) throw SchemaError(what + ".blocks must be an object");
    std::map<int, Matrix> blocks;
    for (const auto& [key, value] : bj.items()) {
        int k = degree_from_key(key);
        blocks.emplace(k, matrix_from_json(value, target.dim(k), source.dim(k),
                                           what + ".blocks[" + key + "]"));
    }
    try {
        return ChainMap(source, target, std::move(blocks));
    } catch (const Error& e) {
        throw SchemaError(what + ": " + e.what());
    }
}

inline Json permutation_to_json(const Permutation& p) {
    Json out = Json::array();
    for (int v : p.images()) out.push_back(v);
    return out;
}

inline Json algebra_element_to_json(const GroupAlgebraElement& e) {
    Json out = Json::object();
    out["n"] = e.n();
    Json terms = Json::array();
    for (const auto& [sigma, coeff] : e.terms()) {
        Json term = Json::object();
        term["perm"] = permutation_to_json(sigma);
        term["coeff"] = to_string(coeff);
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

inline GroupAlgebraElement algebra_element_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw SchemaError("group algebra element needs 'n' and 'terms'");
    GroupAlgebraElement e(j.at("n").get<int>());
    for (const Json& term : j.at("terms")) {
        if (!term.contains("perm") || !term.contains("coeff"))
            throw SchemaError("algebra term needs 'perm' and 'coeff'");
        std::vector<int> images;
        for (const Json& v : term.at("perm")) images.push_back(v.get<int>());
        try {
            e.add_term(Permutation(std::move(images)), rational_from_string(term.at("coeff").get<std::string>()));
        } catch (const Error& err) {
            throw SchemaError(std::string("bad algebra term: ") + err.what());
        }
    }
    return e;
}

// --- instance files ---------------------------------------------------------

struct InstanceTask {
    std::string command;
    Json args;
};

struct InstanceFile {
    std::string version;
    std::map<std::string, Complex> objects;
    std::map<std::string, ChainMap> maps;
    std::vector<InstanceTask> tasks;

    const Complex& object(const std::string& name) const {
        auto it = objects.find(name);
        if (it == objects.end()) throw SchemaError("unknown object '" + name + "'");
        return it->second;
    }

    const ChainMap& map(const std::string& name) const {
        auto it = maps.find(name);
        if (it == maps.end()) throw SchemaError("unknown map '" + name + "'");
        return it->second;
    }
};

inline InstanceFile instance_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("instance file must be a JSON object");
    InstanceFile instance;
    instance.version = j.value("version", std::string("1"));
    if (j.contains("objects")) {
        if (!j.at("objects").is_object()) throw SchemaError("'objects' must be an object");
        for (const auto& [name, value] : j.at("objects").items())
            instance.objects.emplace(name, complex_from_json(value, "objects." + name));
    }
    if (j.contains("maps")) {
        if (!j.at("maps").is_object()) throw SchemaError("'maps' must be an object");
        for (const auto& [name, value] : j.at("maps").items()) {
            if (!value.is_object() || !value.contains("source") || !value.contains("target"))
                throw SchemaError("maps." + name + " needs 'source' and 'target' object names");
            const Complex& source = instance.object(value.at("source").get<std::string>());
            const Complex& target = instance.object(value.at("target").get<std::string>());
            instance.maps.emplace(name, chain_map_from_json(value, source, target, "maps." + name));
        }
    }
    if (j.contains("tasks")) {
        if (!j.at("tasks").is_array()) throw SchemaError("'tasks' must be an array");
        for (const Json& t : j.at("tasks")) {
            if (!t.is_object() || !t.contains("command"))
                throw SchemaError("every task needs a 'command'");
            InstanceTask task{t.at("command").get<std::string>(), t};
            if (t.contains("object")) instance.object(t.at("object").get<std::string>());
            if (t.contains("map")) instance.map(t.at("map").get<std::string>());
            instance.tasks.push_back(std::move(task));
        }
    }
    return instance;
}

// --- report serialization ----------------------------------------------------

inline Json kimura_profile_to_json(const KimuraProfile& p) {
    Json out = Json::object();
    out["even_dimension"] = p.even_dimension;
    out["odd_dimension"] = p.odd_dimension;
    out["wedge_witness"] = p.wedge_witness;
    out["sym_witness"] = p.sym_witness;
    out["witness_verified"] = p.witness_verified;
    return out;
}

inline Json filtration_level_to_json(const FiltrationLevel& level, Sign sign) {
    Json out = Json::object();
    out["i"] = level.i;
    out["sign"] = sign_name(sign);
    out["dims_I"] = dims_to_json(level.dims_I);
    out["dims_J"] = dims_to_json(level.dims_J);
    out["expected_dims"] = dims_to_json(level.expected_dims);
    out["homology_J"] = dims_to_json(level.homology_J);
    out["homology_expected"] = dims_to_json(level.homology_expected);
    out["scalar_check"] = level.scalar_check.has_value() ? Json(*level.scalar_check) : Json(nullptr);
    out["verdict"] = level.pass() ? "pass" : "fail";
    return out;
}

inline Json filtration_report_to_json(const FiltrationReport& report) {
    Json out = Json::object();
    out["m"] = report.m;
    out["sign"] = sign_name(report.sign);
    out["power_dims"] = dims_to_json(report.power_dims);
    out["power_homology"] = dims_to_json(report.power_homology);
    Json levels = Json::array();
    for (const FiltrationLevel& level : report.levels)
        levels.push_back(filtration_level_to_json(level, report.sign));
    out["levels"] = std::move(levels);
    out["telescoping"] = report.telescoping_ok;
    out["first_level"] = report.first_level_ok;
    out["last_level"] = report.last_level_ok;
    out["verdict"] = report.pass ? "pass" : "fail";
    return out;
}

inline Json theorem_verdict_to_json(const TheoremVerdict& v) {
    Json out = Json::object();
    out["a_X"] = v.a_x;
    out["b_Z"] = v.b_z;
    out["m"] = v.m;
    out["pieces_acyclic"] = v.pieces_acyclic;
    out["power_acyclic"] = v.power_acyclic;
    out["filtration"] = filtration_report_to_json(v.report);
    out["verdict"] = v.pass ? "pass" : "fail";
    return out;
}

inline Json schur_split_to_json(const SchurSplitResult& r) {
    Json out = Json::object();
    out["t_blocks"] = chain_map_blocks_to_json(r.t);
    out["full_cone_homology"] = dims_to_json(r.full_cone_homology);
    out["reduced_cone_homology"] = dims_to_json(r.reduced_cone_homology);
    out["verdict"] = r.homology_match ? "pass" : "fail";
    return out;
}

} // namespace findim
