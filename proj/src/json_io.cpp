#include "scn/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace scn {

namespace {

using nlohmann::json;

int require_int(const json& j, const std::string& what) {
    if (!j.is_number_integer())
        throw ValidationError("network file: " + what + " must be an integer");
    return j.get<int>();
}

std::vector<int> parse_links_entry(const json& j, int upstream_size, const std::string& what) {
    if (!j.is_array())
        throw ValidationError("network file: " + what + " must be an array of indices");
    std::vector<int> links;
    for (const json& e : j) {
        const int v = require_int(e, what + " entry");
        if (v < 1 || v > upstream_size)
            throw ValidationError("network file: " + what + " index " + std::to_string(v) +
                                  " out of range (1-based)");
        links.push_back(v - 1);
    }
    return links;
}

}  // namespace

Network network_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("network file: top level must be an object");

    if (j.contains("tiers")) {
        const json& jt = j["tiers"];
        if (!jt.is_array() || jt.size() < 2)
            throw ValidationError("network file: tiers must list at least two tier sizes");
        std::vector<int> sizes;
        for (const json& e : jt) sizes.push_back(require_int(e, "tier size"));
        if (!j.contains("links") || !j["links"].is_array() ||
            j["links"].size() != sizes.size() - 1)
            throw ValidationError("network file: links must hold one list per strategic tier");
        std::vector<std::vector<std::vector<int>>> links;
        for (size_t t = 0; t + 1 < sizes.size(); ++t) {
            const json& tier = j["links"][t];
            if (!tier.is_array() || static_cast<int>(tier.size()) != sizes[t])
                throw ValidationError("network file: tier " + std::to_string(t + 1) +
                                      " links must have one entry per agent");
            std::vector<std::vector<int>> rows;
            for (size_t i = 0; i < tier.size(); ++i)
                rows.push_back(parse_links_entry(
                    tier[i], sizes[t + 1],
                    "tier " + std::to_string(t + 1) + " agent " + std::to_string(i + 1)));
            links.push_back(std::move(rows));
        }
        return Network(sizes, links);
    }

    if (!j.contains("n") || !j.contains("m") || !j.contains("links"))
        throw ValidationError("network file: need n, m and links (or tiers and links)");
    const int n = require_int(j["n"], "n");
    const int m = require_int(j["m"], "m");
    const json& jl = j["links"];
    if (!jl.is_array() || static_cast<int>(jl.size()) != n)
        throw ValidationError("network file: links must have one entry per retailer");
    std::vector<std::vector<int>> links;
    for (int i = 0; i < n; ++i)
        links.push_back(
            parse_links_entry(jl[static_cast<size_t>(i)], m, "retailer " + std::to_string(i + 1)));
    return Network(n, m, links);
}

Network load_network_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("network file: ") + e.what());
    }
    return network_from_json(j);
}

Network load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("network file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_network_text(ss.str());
}

std::string network_to_json(const Network& net) {
    const auto emit_tier = [&](int t) {
        std::string out = "[";
        for (int i = 0; i < net.tier_size(t); ++i) {
            if (i) out += ',';
            out += '[';
            const auto& nb = net.out_neighbors(t, i);
            for (size_t k = 0; k < nb.size(); ++k) {
                if (k) out += ',';
                out += std::to_string(nb[k] + 1);
            }
            out += ']';
        }
        return out + "]";
    };

    if (net.tier_count() == 2)
        return "{\"n\":" + std::to_string(net.retailers()) +
               ",\"m\":" + std::to_string(net.suppliers()) + ",\"links\":" + emit_tier(1) + "}";

    std::string out = "{\"tiers\":[";
    for (int t = 1; t <= net.tier_count(); ++t) {
        if (t > 1) out += ',';
        out += std::to_string(net.tier_size(t));
    }
    out += "],\"links\":[";
    for (int t = 1; t < net.tier_count(); ++t) {
        if (t > 1) out += ',';
        out += emit_tier(t);
    }
    return out + "]}";
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

bool check(const nlohmann::json& value, const nlohmann::json& schema,
           const nlohmann::json& root, const std::string& path, std::string* error, int depth) {
    const auto fail = [&](const std::string& why) {
        if (error) *error = path + ": " + why;
        return false;
    };

    if (depth > 64) return fail("schema nesting too deep");

    // Local refs only ("#/definitions/..."); a ref replaces the whole
    // subschema it appears in, JSON Schema draft-07 style.
    if (schema.contains("$ref") && schema["$ref"].is_string()) {
        const std::string ref = schema["$ref"].get<std::string>();
        if (ref.empty() || ref[0] != '#') return fail("unsupported $ref " + ref);
        try {
            const nlohmann::json& target = root.at(nlohmann::json::json_pointer(ref.substr(1)));
            return check(value, target, root, path, error, depth + 1);
        } catch (const nlohmann::json::exception&) {
            return fail("unresolvable $ref " + ref);
        }
    }

    if (schema.contains("type")) {
        const nlohmann::json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else if (t.is_array()) {
            for (const nlohmann::json& alt : t)
                if (alt.is_string() && type_matches(value, alt.get<std::string>())) {
                    ok = true;
                    break;
                }
        }
        if (!ok) return fail("type mismatch, expected " + t.dump());
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const nlohmann::json& alt : schema["enum"])
            if (value == alt) {
                ok = true;
                break;
            }
        if (!ok) return fail("value not in enum " + schema["enum"].dump());
    }

    if (value.is_object()) {
        if (schema.contains("required"))
            for (const nlohmann::json& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    return fail("missing required key " + key.get<std::string>());
        const bool closed =
            schema.contains("additionalProperties") && schema["additionalProperties"].is_boolean()
                ? !schema["additionalProperties"].get<bool>()
                : false;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (schema.contains("properties") && schema["properties"].contains(it.key())) {
                if (!check(it.value(), schema["properties"][it.key()], root,
                           path + "." + it.key(), error, depth + 1))
                    return false;
            } else if (closed) {
                return fail("unexpected key " + it.key());
            }
        }
    }

    if (value.is_array()) {
        if (schema.contains("minItems") &&
            value.size() < schema["minItems"].get<size_t>())
            return fail("fewer than minItems entries");
        if (schema.contains("items")) {
            size_t idx = 0;
            for (const nlohmann::json& e : value) {
                if (!check(e, schema["items"], root, path + "[" + std::to_string(idx) + "]", error,
                           depth + 1))
                    return false;
                ++idx;
            }
        }
    }

    return true;
}

}  // namespace

bool matches_schema(const nlohmann::json& value, const nlohmann::json& schema,
                    std::string* error) {
    return check(value, schema, schema, "$", error, 0);
}

}  // namespace scn
