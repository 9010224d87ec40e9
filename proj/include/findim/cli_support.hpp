#pragma once

#include <string>
#include <vector>

#include <findim/json_io.hpp>

namespace findim::cli {

inline constexpr const char* engine_version = "1.0.0";

// Exit-code contract: CI can tell theorem-check failures apart from misuse.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;        // usage / schema errors
inline constexpr int exit_cap = 3;          // cap or memory-guard violation
inline constexpr int exit_verdict = 4;      // a verification verdict failed
inline constexpr int exit_inapplicable = 5; // theorem hypotheses do not hold

inline int exit_code_for_verdict(bool pass) { return pass ? exit_ok : exit_verdict; }

inline std::string format_dims(const std::map<int, int>& dims) {
    if (dims.empty()) return "0";
    std::string out = "{";
    bool first = true;
    for (const auto& [k, d] : dims) {
        if (!first) out += ", ";
        out += std::to_string(k) + ":" + std::to_string(d);
        first = false;
    }
    return out + "}";
}

inline Partition partition_from_string(const std::string& text) {
    std::vector<int> parts;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (cur.empty()) continue;
            try {
                parts.push_back(std::stoi(cur));
            } catch (...) {
                throw SchemaError("bad partition literal '" + text + "'");
            }
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    try {
        return Partition(std::move(parts));
    } catch (const Error& e) {
        throw SchemaError("bad partition '" + text + "': " + e.what());
    }
}

namespace detail {

inline void require(bool cond, const std::string& message) {
    if (!cond) throw SchemaError("report schema: " + message);
}

inline void require_dims(const Json& j, const std::string& field) {
    require(j.contains(field) && j.at(field).is_object(), "missing dims object '" + field + "'");
    for (const auto& [key, value] : j.at(field).items()) {
        degree_from_key(key);
        require(value.is_number_integer(), "non-integer dimension in '" + field + "'");
    }
}

} // namespace detail

// Validates an emitted machine-readable report against the published schema
// (field presence and types). Reports that fail to re-parse are bugs.
inline void validate_report_schema(const Json& j) {
    using detail::require;
    using detail::require_dims;
    require(j.is_object(), "report must be an object");
    require(j.contains("command") && j.at("command").is_string(), "missing 'command'");
    require(j.contains("version") && j.at("version").is_string(), "missing 'version'");
    const std::string command = j.at("command").get<std::string>();
    if (command == "powers") {
        require(j.contains("object") && j.at("object").is_string(), "powers: missing 'object'");
        require(j.contains("kind") && j.at("kind").is_string(), "powers: missing 'kind'");
        const std::string kind = j.at("kind").get<std::string>();
        require(kind == "wedge" || kind == "sym" || kind == "schur", "powers: bad kind");
        if (kind == "schur")
            require(j.contains("lambda") && j.at("lambda").is_array(), "powers: missing 'lambda'");
        else
            require(j.contains("n") && j.at("n").is_number_integer(), "powers: missing 'n'");
        require_dims(j, "dims");
        require_dims(j, "homology");
        require(j.contains("vanishes") && j.at("vanishes").is_boolean(), "powers: missing 'vanishes'");
    } else if (command == "dim") {
        require(j.contains("object") && j.at("object").is_string(), "dim: missing 'object'");
        require(j.contains("profile") && j.at("profile").is_object(), "dim: missing 'profile'");
        const Json& p = j.at("profile");
        for (const char* field : {"even_dimension", "odd_dimension", "wedge_witness", "sym_witness"})
            require(p.contains(field) && p.at(field).is_number_integer(), std::string("dim: bad ") + field);
        require(p.contains("witness_verified") && p.at("witness_verified").is_boolean(),
                "dim: bad witness_verified");
    } else if (command == "filtration" || command == "verify") {
        const Json& f = command == "filtration" ? j : j.at("filtration");
        require(f.contains("m") && f.at("m").is_number_integer(), "filtration: missing 'm'");
        require(f.contains("sign") && f.at("sign").is_string(), "filtration: missing 'sign'");
        require_dims(f, "power_dims");
        require_dims(f, "power_homology");
        require(f.contains("levels") && f.at("levels").is_array(), "filtration: missing 'levels'");
        for (const Json& level : f.at("levels")) {
            require(level.contains("i") && level.at("i").is_number_integer(), "level: missing 'i'");
            require(level.contains("sign") && level.at("sign").is_string(), "level: missing 'sign'");
            require_dims(level, "dims_I");
            require_dims(level, "dims_J");
            require_dims(level, "expected_dims");
            require(level.contains("scalar_check") &&
                        (level.at("scalar_check").is_null() || level.at("scalar_check").is_boolean()),
                    "level: bad scalar_check");
            require(level.contains("verdict") && level.at("verdict").is_string(), "level: missing verdict");
        }
        for (const char* field : {"telescoping", "first_level", "last_level"})
            require(f.contains(field) && f.at(field).is_boolean(), std::string("filtration: bad ") + field);
        require(f.contains("verdict") && f.at("verdict").is_string(), "filtration: missing verdict");
        if (command == "verify") {
            for (const char* field : {"a_X", "b_Z", "m"})
                require(j.contains(field) && j.at(field).is_number_integer(),
                        std::string("verify: bad ") + field);
            require(j.contains("verdict") && j.at("verdict").is_string(), "verify: missing verdict");
        }
    } else if (command == "idempotents") {
        require(j.contains("n") && j.at("n").is_number_integer(), "idempotents: missing 'n'");
        require(j.contains("rows") && j.at("rows").is_array(), "idempotents: missing 'rows'");
        for (const Json& row : j.at("rows")) {
            require(row.contains("partition") && row.at("partition").is_array(), "row: missing partition");
            require(row.contains("hook_dimension") && row.at("hook_dimension").is_string(),
                    "row: missing hook_dimension");
            for (const char* field : {"idempotent", "central"})
                require(row.contains(field) && row.at(field).is_boolean(), std::string("row: bad ") + field);
        }
        for (const char* field : {"orthogonal", "complete", "sum_of_squares_ok"})
            require(j.contains(field) && j.at(field).is_boolean(), std::string("idempotents: bad ") + field);
        require(j.contains("verdict") && j.at("verdict").is_string(), "idempotents: missing verdict");
    } else if (command == "split") {
        require(j.contains("t_blocks") && j.at("t_blocks").is_object(), "split: missing 't_blocks'");
        require_dims(j, "full_cone_homology");
        require_dims(j, "reduced_cone_homology");
        require(j.contains("verdict") && j.at("verdict").is_string(), "split: missing verdict");
    } else {
        require(false, "unknown command '" + command + "'");
    }
}

} // namespace findim::cli
