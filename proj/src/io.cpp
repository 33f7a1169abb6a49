#include "zemac/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace zemac::io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object())
        throw ValidationError(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(std::string("missing field '") + key + "'");
    return *it;
}

std::string string_value(const Json& j, const char* what) {
    if (!j.is_string())
        throw ValidationError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::uint64_t uint_value(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw ValidationError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

std::vector<Symbol> symbol_array(const Json& j, const char* what) {
    if (!j.is_array())
        throw ValidationError(std::string(what) + " must be an array of strings");
    std::vector<Symbol> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(string_value(e, what));
    return out;
}

std::vector<SymbolTuple> sequence_array(const Json& j, const char* what) {
    if (!j.is_array())
        throw ValidationError(std::string(what) + " must be an array of symbol arrays");
    std::vector<SymbolTuple> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(symbol_array(e, what));
    return out;
}

Json tuple_to_json(const SymbolTuple& tuple) {
    Json arr = Json::array();
    for (const auto& s : tuple) arr.push_back(s);
    return arr;
}

Json mu_to_json(const MuTriple& mu) {
    return Json{{"mu0", mu[0]}, {"mu1", mu[1]}, {"mu2", mu[2]}};
}

} // namespace

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("cannot parse '" + path + "': " + e.what());
    }
}

Channel channel_from_json(const Json& j) {
    std::vector<Transition> transitions;
    const Json& rows = field(j, "transitions");
    if (!rows.is_array())
        throw ValidationError("'transitions' must be an array");
    transitions.reserve(rows.size());
    for (const auto& row : rows) {
        transitions.push_back({string_value(field(row, "x1"), "transition x1"),
                               string_value(field(row, "x2"), "transition x2"),
                               string_value(field(row, "w"), "transition w"),
                               string_value(field(row, "y"), "transition y")});
    }
    return Channel::build(symbol_array(field(j, "x1"), "x1 alphabet"),
                          symbol_array(field(j, "x2"), "x2 alphabet"),
                          symbol_array(field(j, "w"), "w alphabet"),
                          symbol_array(field(j, "y"), "y alphabet"), transitions);
}

World world_from_json(const Json& j) {
    auto variables = symbol_array(field(j, "variables"), "variables");
    auto outcomes = sequence_array(field(j, "outcomes"), "outcomes");
    return World::build(std::move(variables), outcomes);
}

CooperationStructure structure_from_json(const Channel& ch, const Json& j) {
    const auto n = static_cast<std::uint32_t>(uint_value(field(j, "n"), "n"));
    const Json& entries_json = field(j, "u");
    if (!entries_json.is_array())
        throw ValidationError("'u' must be an array of structure entries");
    std::vector<StructureEntry> entries;
    entries.reserve(entries_json.size());
    for (const auto& e : entries_json) {
        entries.push_back({string_value(field(e, "label"), "entry label"),
                           sequence_array(field(e, "a"), "entry a"),
                           sequence_array(field(e, "b"), "entry b")});
    }
    return CooperationStructure::build(ch, n, std::move(entries));
}

Code code_from_json(const Json& j) {
    Code code;
    code.n = static_cast<std::uint32_t>(uint_value(field(j, "n"), "n"));
    const Json& mu = field(j, "mu");
    if (!mu.is_array() || mu.size() != 3)
        throw ValidationError("'mu' must be an array of three integers");
    for (std::size_t i = 0; i < 3; ++i) code.mu[i] = uint_value(mu[i], "mu entry");

    auto load_gamma = [&](const char* key,
                          std::map<std::pair<std::uint64_t, std::uint64_t>, SymbolTuple>& out) {
        const Json& rows = field(j, key);
        if (!rows.is_array())
            throw ValidationError(std::string("'") + key + "' must be an array");
        for (const auto& row : rows) {
            auto m0 = uint_value(field(row, "m0"), "encoder m0");
            auto m = uint_value(field(row, "m"), "encoder m");
            auto seq = symbol_array(field(row, "sequence"), "encoder sequence");
            if (!out.emplace(std::make_pair(m0, m), std::move(seq)).second)
                throw ValidationError(std::string("duplicate ") + key + " entry (m0=" +
                                      std::to_string(m0) + ", m=" + std::to_string(m) + ")");
        }
    };
    load_gamma("gamma1", code.gamma1);
    load_gamma("gamma2", code.gamma2);

    if (j.is_object() && j.contains("decoder")) {
        const Json& dec = j.at("decoder");
        DecoderTables tables;
        for (const auto& row : field(dec, "stage0")) {
            tables.stage0[symbol_array(field(row, "y"), "decoder y")] =
                uint_value(field(row, "m0"), "decoder m0");
        }
        auto load_stage = [&](const char* key,
                              std::map<std::pair<std::uint64_t, SymbolTuple>, std::uint64_t>& out) {
            for (const auto& row : field(dec, key)) {
                out[{uint_value(field(row, "m0"), "decoder m0"),
                     symbol_array(field(row, "y"), "decoder y")}] =
                    uint_value(field(row, "m"), "decoder m");
            }
        };
        load_stage("stage1", tables.stage1);
        load_stage("stage2", tables.stage2);
        code.decoder = std::move(tables);
    }
    return code;
}

Json world_to_json(const World& w) {
    Json j;
    Json vars = Json::array();
    for (const auto& v : w.variables()) vars.push_back(v);
    j["variables"] = std::move(vars);
    Json outcomes = Json::array();
    for (std::size_t i = 0; i < w.size(); ++i)
        outcomes.push_back(tuple_to_json(w.row_tokens(i)));
    j["outcomes"] = std::move(outcomes);
    return j;
}

Json structure_to_json(const CooperationStructure& s) {
    Json j;
    j["n"] = s.n();
    Json entries = Json::array();
    for (const auto& e : s.entries()) {
        Json entry;
        entry["label"] = e.label;
        Json a = Json::array();
        for (const auto& seq : e.a) a.push_back(tuple_to_json(seq));
        entry["a"] = std::move(a);
        Json b = Json::array();
        for (const auto& seq : e.b) b.push_back(tuple_to_json(seq));
        entry["b"] = std::move(b);
        entries.push_back(std::move(entry));
    }
    j["u"] = std::move(entries);
    return j;
}

Json code_to_json(const Code& code) {
    Json j;
    j["n"] = code.n;
    j["mu"] = Json::array({code.mu[0], code.mu[1], code.mu[2]});
    auto gamma_to_json = [](const std::map<std::pair<std::uint64_t, std::uint64_t>,
                                           SymbolTuple>& gamma) {
        Json rows = Json::array();
        for (const auto& [key, seq] : gamma) {
            Json row;
            row["m0"] = key.first;
            row["m"] = key.second;
            row["sequence"] = tuple_to_json(seq);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["gamma1"] = gamma_to_json(code.gamma1);
    j["gamma2"] = gamma_to_json(code.gamma2);
    if (code.decoder) {
        Json dec;
        Json stage0 = Json::array();
        for (const auto& [y, m0] : code.decoder->stage0) {
            Json row;
            row["y"] = tuple_to_json(y);
            row["m0"] = m0;
            stage0.push_back(std::move(row));
        }
        dec["stage0"] = std::move(stage0);
        auto stage_to_json = [](const std::map<std::pair<std::uint64_t, SymbolTuple>,
                                               std::uint64_t>& stage) {
            Json rows = Json::array();
            for (const auto& [key, m] : stage) {
                Json row;
                row["m0"] = key.first;
                row["y"] = tuple_to_json(key.second);
                row["m"] = m;
                rows.push_back(std::move(row));
            }
            return rows;
        };
        dec["stage1"] = stage_to_json(code.decoder->stage1);
        dec["stage2"] = stage_to_json(code.decoder->stage2);
        j["decoder"] = std::move(dec);
    }
    return j;
}

Json synthesis_to_json(const SynthesisResult& result) {
    Json j = code_to_json(result.code);
    j["achieved"] = Json::array({result.achieved[0], result.achieved[1], result.achieved[2]});
    Json reps = Json::array();
    for (std::size_t i = 0; i < result.representatives.size(); ++i) {
        Json row;
        row["m0"] = i + 1;
        row["u"] = result.representatives[i];
        reps.push_back(std::move(row));
    }
    j["representatives"] = std::move(reps);
    Json cells = Json::array();
    for (const auto& c : result.cell_assignments) {
        Json row;
        row["m0"] = c.m0;
        row["encoder"] = c.encoder;
        row["m"] = c.m;
        row["cell"] = c.cell;
        cells.push_back(std::move(row));
    }
    j["cells"] = std::move(cells);
    return j;
}

Json verify_to_json(const VerifyReport& report) {
    Json j;
    j["ok"] = report.ok;
    if (report.certificate) {
        const Certificate& c = *report.certificate;
        Json cert;
        cert["m0"] = c.message[0];
        cert["m1"] = c.message[1];
        cert["m2"] = c.message[2];
        cert["w"] = tuple_to_json(c.noise);
        cert["y"] = tuple_to_json(c.y);
        if (c.other) {
            Json other;
            other["m0"] = (*c.other)[0];
            other["m1"] = (*c.other)[1];
            other["m2"] = (*c.other)[2];
            cert["other"] = std::move(other);
        } else {
            cert["other"] = nullptr;
        }
        j["certificate"] = std::move(cert);
    }
    return j;
}

Json info_to_json(const InfoValue& value) {
    Json j;
    j["cells"] = value.cells;
    j["bits"] = value.bits();
    return j;
}

Json partition_to_json(const Partition& p) {
    Json j;
    Json vars = Json::array();
    for (const auto& v : p.ground().variables()) vars.push_back(v);
    j["variables"] = std::move(vars);
    Json cells = Json::array();
    for (const auto& cell : p.cells()) {
        Json points = Json::array();
        for (auto idx : cell) points.push_back(tuple_to_json(p.ground().row_tokens(idx)));
        cells.push_back(std::move(points));
    }
    j["cells"] = std::move(cells);
    return j;
}

Json region_to_json(const RateRegion& region) {
    Json j;
    j["n"] = region.n;
    j["strategy"] = region.strategy;
    Json points = Json::array();
    for (const auto& mu : region.points) {
        Json row = mu_to_json(mu);
        row["achievable"] = true;
        points.push_back(std::move(row));
    }
    j["points"] = std::move(points);
    Json maximal = Json::array();
    for (const auto& mu : region.maximal) {
        Json row = mu_to_json(mu);
        row["witness"] = structure_to_json(region.witnesses.at(mu));
        maximal.push_back(std::move(row));
    }
    j["maximal"] = std::move(maximal);
    return j;
}

Json oracle_region_to_json(const OracleRegion& region) {
    Json j;
    j["n"] = region.n;
    Json rows = Json::array();
    for (const auto& row : region.rows) {
        Json r = mu_to_json(row.mu);
        r["achievable"] = row.achievable;
        if (row.witness) r["witness"] = code_to_json(*row.witness);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string region_csv(const RateRegion& region) {
    std::ostringstream out;
    out << "mu0,mu1,mu2,maximal\n";
    for (const auto& mu : region.points) {
        const bool maximal = std::find(region.maximal.begin(), region.maximal.end(), mu) !=
                             region.maximal.end();
        out << mu[0] << ',' << mu[1] << ',' << mu[2] << ',' << (maximal ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string oracle_region_csv(const OracleRegion& region) {
    std::ostringstream out;
    out << "mu0,mu1,mu2,achievable\n";
    for (const auto& row : region.rows)
        out << row.mu[0] << ',' << row.mu[1] << ',' << row.mu[2] << ','
            << (row.achievable ? 1 : 0) << '\n';
    return out.str();
}

namespace {

void write_escaped(std::ostream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\b': os << "\\b"; break;
            case '\f': os << "\\f"; break;
            case '\n': os << "\\n"; break;
            case '\r': os << "\\r"; break;
            case '\t': os << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
        }
    }
    os << '"';
}

bool is_scalar(const Json& j) {
    return !j.is_object() && !j.is_array();
}

void write_scalar(std::ostream& os, const Json& j) {
    if (j.is_string()) {
        write_escaped(os, j.get<std::string>());
    } else if (j.is_boolean()) {
        os << (j.get<bool>() ? "true" : "false");
    } else if (j.is_null()) {
        os << "null";
    } else if (j.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", j.get<double>());
        os << buf;
    } else if (j.is_number_unsigned()) {
        os << j.get<std::uint64_t>();
    } else {
        os << j.get<std::int64_t>();
    }
}

void write_value(std::ostream& os, const Json& j, int depth) {
    const std::string indent(2 * static_cast<std::size_t>(depth), ' ');
    const std::string inner(2 * static_cast<std::size_t>(depth + 1), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            os << inner;
            write_escaped(os, it.key());
            os << ": ";
            write_value(os, it.value(), depth + 1);
            if (i + 1 < j.size()) os << ',';
            os << '\n';
        }
        os << indent << '}';
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]";
            return;
        }
        bool all_scalar = true;
        for (const auto& e : j)
            if (!is_scalar(e)) { all_scalar = false; break; }
        if (all_scalar) {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) os << ", ";
                write_scalar(os, j[i]);
            }
            os << ']';
        } else {
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << inner;
                write_value(os, j[i], depth + 1);
                if (i + 1 < j.size()) os << ',';
                os << '\n';
            }
            os << indent << ']';
        }
    } else {
        write_scalar(os, j);
    }
}

} // namespace

void write_json(std::ostream& os, const Json& j) {
    write_value(os, j, 0);
    os << '\n';
}

std::string dump_json(const Json& j) {
    std::ostringstream out;
    write_json(out, j);
    return out.str();
}

} // namespace zemac::io
