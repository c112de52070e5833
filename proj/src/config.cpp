#include "bihsphere/config.hpp"

#include <cctype>
#include <cstdlib>
#include <set>

namespace bihsphere {

double ConfigValue::number() const {
    if (!is_number()) throw ConfigError("expected a number", line);
    return std::get<double>(v);
}
bool ConfigValue::boolean() const {
    if (!is_bool()) throw ConfigError("expected true/false", line);
    return std::get<bool>(v);
}
const std::string& ConfigValue::string() const {
    if (!is_string()) throw ConfigError("expected a quoted string", line);
    return std::get<std::string>(v);
}
const ConfigArray& ConfigValue::array() const {
    if (!is_array()) throw ConfigError("expected an array [..]", line);
    return std::get<ConfigArray>(v);
}
const ConfigTable& ConfigValue::table() const {
    if (!is_table()) throw ConfigError("expected an inline table {..}", line);
    return std::get<ConfigTable>(v);
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool done() const { return i >= s.size(); }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
};

std::string parse_key(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_'))
        ++c.i;
    if (c.i == start) throw ConfigError("expected a key", c.line);
    return c.s.substr(start, c.i - start);
}

ConfigValue parse_value(Cursor& c);

ConfigValue parse_scalar(Cursor& c) {
    ConfigValue out;
    out.line = c.line;
    c.skip_ws();
    if (c.done()) throw ConfigError("expected a value", c.line);
    const char ch = c.peek();
    if (ch == '"') {
        ++c.i;
        std::string s;
        while (!c.done() && c.peek() != '"') s += c.s[c.i++];
        if (c.done()) throw ConfigError("unterminated string", c.line);
        ++c.i;
        out.v = s;
        return out;
    }
    std::size_t start = c.i;
    while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '}' && c.peek() != '#')
        ++c.i;
    std::string tok = c.s.substr(start, c.i - start);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
    if (tok == "true") {
        out.v = true;
        return out;
    }
    if (tok == "false") {
        out.v = false;
        return out;
    }
    char* end = nullptr;
    const double num = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ConfigError("invalid value '" + tok + "'", c.line);
    out.v = num;
    return out;
}

ConfigValue parse_value(Cursor& c) {
    c.skip_ws();
    ConfigValue out;
    out.line = c.line;
    if (c.peek() == '[') {
        ++c.i;
        ConfigArray arr;
        c.skip_ws();
        if (c.peek() == ']') {
            ++c.i;
            out.v = arr;
            return out;
        }
        while (true) {
            arr.push_back(parse_value(c));
            c.skip_ws();
            if (c.peek() == ',') {
                ++c.i;
                continue;
            }
            if (c.peek() == ']') {
                ++c.i;
                break;
            }
            throw ConfigError("expected ',' or ']' in array", c.line);
        }
        out.v = arr;
        return out;
    }
    if (c.peek() == '{') {
        ++c.i;
        ConfigTable tab;
        c.skip_ws();
        if (c.peek() == '}') {
            ++c.i;
            out.v = tab;
            return out;
        }
        while (true) {
            std::string key = parse_key(c);
            c.skip_ws();
            if (c.peek() != '=') throw ConfigError("expected '=' in inline table", c.line);
            ++c.i;
            if (tab.count(key)) throw ConfigError("duplicate key '" + key + "'", c.line);
            tab[key] = parse_value(c);
            c.skip_ws();
            if (c.peek() == ',') {
                ++c.i;
                c.skip_ws();
                continue;
            }
            if (c.peek() == '}') {
                ++c.i;
                break;
            }
            throw ConfigError("expected ',' or '}' in inline table", c.line);
        }
        out.v = tab;
        return out;
    }
    return parse_scalar(c);
}

void strip_comment(std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) {
            line.resize(i);
            return;
        }
    }
}

}  // namespace

ConfigDocument parse_config_document(const std::string& text) {
    ConfigDocument doc;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line =
            eol == std::string::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        strip_comment(line);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", line_no);
            section = line.substr(1, line.size() - 2);
            if (section.empty()) throw ConfigError("empty section name", line_no);
            doc.emplace(section, ConfigTable{});
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
        std::string key = line.substr(0, eq);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (key.empty()) throw ConfigError("empty key", line_no);
        for (char ch : key)
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
                throw ConfigError("invalid key '" + key + "'", line_no);
        std::string rest = line.substr(eq + 1);
        Cursor c{rest, 0, line_no};
        ConfigValue value = parse_value(c);
        c.skip_ws();
        if (!c.done()) throw ConfigError("trailing characters after value", line_no);
        if (section.empty()) throw ConfigError("key outside any [section]", line_no);
        if (doc[section].count(key))
            throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);
        doc[section][key] = value;
    }
    return doc;
}

void apply_override(ConfigDocument& doc, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key must be section.key: " + assignment);
    std::string rest = assignment.substr(eq + 1);
    Cursor c{rest, 0, 0};
    ConfigValue value = parse_value(c);
    doc[path.substr(0, dot)][path.substr(dot + 1)] = value;
}

namespace {

void reject_unknown(const ConfigTable& table, const std::set<std::string>& known,
                    const std::string& section) {
    for (const auto& [key, value] : table)
        if (!known.count(key))
            throw ConfigError("unknown key '" + key + "' in [" + section + "]", value.line);
}

const ConfigValue* find(const ConfigTable& t, const std::string& key) {
    auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
}

}  // namespace

RunConfig build_run_config(const ConfigDocument& doc) {
    RunConfig cfg;
    if (const char* env = std::getenv("BIHSPHERE_TOLERANCE")) {
        const double t = std::atof(env);
        if (t > 0) cfg.tol.residual = t;
    }

    static const std::set<std::string> known_sections = {"immersion", "grid",       "checks",
                                                         "tolerances", "output",    "scan"};
    for (const auto& [name, table] : doc) {
        (void)table;
        if (!known_sections.count(name)) throw ConfigError("unknown section [" + name + "]");
    }

    // [immersion]
    auto imm_it = doc.find("immersion");
    if (imm_it != doc.end()) {
        const ConfigTable& t = imm_it->second;
        reject_unknown(t,
                       {"catalog", "params", "parameters", "ambient_dim", "components", "domain",
                        "periodic", "compact"},
                       "immersion");
        if (const ConfigValue* v = find(t, "compact")) cfg.compact = v->boolean();
        if (const ConfigValue* v = find(t, "catalog")) {
            cfg.catalog_name = v->string();
            if (const ConfigValue* p = find(t, "params"))
                for (const auto& [key, val] : p->table()) cfg.catalog_params[key] = val.number();
            for (const char* forbidden : {"parameters", "components", "domain", "periodic",
                                          "ambient_dim"})
                if (find(t, forbidden))
                    throw ConfigError(std::string("'") + forbidden +
                                      "' is only valid for DSL immersions");
        } else if (find(t, "components")) {
            DslBlock dsl;
            const ConfigValue* params = find(t, "parameters");
            if (!params) throw ConfigError("[immersion] with components requires 'parameters'");
            for (const auto& p : params->array()) dsl.parameters.push_back(p.string());
            const ConfigValue* comps = find(t, "components");
            for (const auto& cmp : comps->array()) dsl.components.push_back(cmp.string());
            const ConfigValue* amb = find(t, "ambient_dim");
            if (!amb) throw ConfigError("[immersion] with components requires 'ambient_dim'");
            dsl.ambient_dim = static_cast<int>(amb->number());
            if (static_cast<int>(dsl.components.size()) != dsl.ambient_dim)
                throw ConfigError("components count (" + std::to_string(dsl.components.size()) +
                                  ") does not match ambient_dim (" +
                                  std::to_string(dsl.ambient_dim) + ")");
            const ConfigValue* dom = find(t, "domain");
            if (!dom) throw ConfigError("[immersion] with components requires 'domain'");
            for (const auto& pair : dom->array()) {
                const ConfigArray& ab = pair.array();
                if (ab.size() != 2) throw ConfigError("domain entries must be [lo, hi]");
                dsl.domain.push_back({ab[0].number(), ab[1].number(), std::nullopt});
            }
            if (dsl.domain.size() != dsl.parameters.size())
                throw ConfigError("domain needs one [lo, hi] per parameter");
            if (const ConfigValue* per = find(t, "periodic")) {
                const ConfigArray& arr = per->array();
                if (arr.size() != dsl.parameters.size())
                    throw ConfigError("periodic needs one entry per parameter");
                for (std::size_t i = 0; i < arr.size(); ++i) {
                    if (arr[i].is_string()) {
                        if (arr[i].string() != "none")
                            throw ConfigError("periodic entries are a period or \"none\"");
                    } else {
                        dsl.domain[i].period = arr[i].number();
                    }
                }
            }
            cfg.dsl = std::move(dsl);
        } else {
            throw ConfigError("[immersion] requires either 'catalog' or a DSL block");
        }
    }

    // [grid]
    if (auto it = doc.find("grid"); it != doc.end()) {
        reject_unknown(it->second, {"points_per_dim", "boundary_offset"}, "grid");
        if (const ConfigValue* v = find(it->second, "points_per_dim"))
            cfg.grid.points_per_dim = static_cast<int>(v->number());
        if (const ConfigValue* v = find(it->second, "boundary_offset"))
            cfg.grid.boundary_offset = v->number();
        if (cfg.grid.points_per_dim < 3)
            throw ConfigError("grid.points_per_dim must be at least 3");
        if (!(cfg.grid.boundary_offset >= 0.0 && cfg.grid.boundary_offset < 0.5))
            throw ConfigError("grid.boundary_offset must lie in [0, 0.5)");
    }

    // [checks]
    if (auto it = doc.find("checks"); it != doc.end()) {
        const ConfigTable& t = it->second;
        reject_unknown(t,
                       {"bitension", "characterization", "parallel_identities", "eigen_identities", "scalar", "spectral",
                        "gates", "area_scan"},
                       "checks");
        auto flag = [&](const char* key, bool& slot) {
            if (const ConfigValue* v = find(t, key)) slot = v->boolean();
        };
        flag("bitension", cfg.checks.bitension);
        flag("characterization", cfg.checks.characterization);
        flag("parallel_identities", cfg.checks.parallel_identities);
        flag("eigen_identities", cfg.checks.eigen_identities);
        flag("scalar", cfg.checks.scalar);
        flag("spectral", cfg.checks.spectral);
        flag("gates", cfg.checks.gates);
        flag("area_scan", cfg.checks.area_scan);
    }
    if (!cfg.checks.any()) throw ConfigError("at least one check must be enabled");

    // [tolerances]
    if (auto it = doc.find("tolerances"); it != doc.end()) {
        const ConfigTable& t = it->second;
        reject_unknown(t,
                       {"residual", "constraint", "parallel", "cmc", "spectral_fit",
                        "mass_symmetry", "eig_match", "cond_limit"},
                       "tolerances");
        auto num = [&](const char* key, double& slot) {
            if (const ConfigValue* v = find(t, key)) {
                slot = v->number();
                if (!(slot > 0)) throw ConfigError(std::string("tolerances.") + key +
                                                   " must be positive");
            }
        };
        num("residual", cfg.tol.residual);
        num("constraint", cfg.tol.constraint);
        num("parallel", cfg.tol.parallel);
        num("cmc", cfg.tol.cmc);
        num("spectral_fit", cfg.tol.spectral_fit);
        num("mass_symmetry", cfg.tol.mass_symmetry);
        num("eig_match", cfg.tol.eig_match);
        num("cond_limit", cfg.tol.cond_limit);
    }

    // [output]
    if (auto it = doc.find("output"); it != doc.end()) {
        const ConfigTable& t = it->second;
        reject_unknown(t, {"format", "path"}, "output");
        if (const ConfigValue* v = find(t, "format")) {
            const std::string& f = v->string();
            if (f == "json") cfg.output.format = OutputFormat::Json;
            else if (f == "csv") cfg.output.format = OutputFormat::Csv;
            else if (f == "text") cfg.output.format = OutputFormat::Text;
            else throw ConfigError("output.format must be json, csv or text", v->line);
        }
        if (const ConfigValue* v = find(t, "path")) cfg.output.path = v->string();
    }

    // [scan]
    if (auto it = doc.find("scan"); it != doc.end()) {
        const ConfigTable& t = it->second;
        reject_unknown(t, {"family", "m", "m1", "m2", "a_min", "a_max", "step", "grid_points"},
                       "scan");
        ScanBlock scan;
        const ConfigValue* fam = find(t, "family");
        if (!fam) throw ConfigError("[scan] requires 'family'");
        scan.family = fam->string();
        if (scan.family != "hypersphere" && scan.family != "clifford")
            throw ConfigError("scan.family must be 'hypersphere' or 'clifford'", fam->line);
        if (const ConfigValue* v = find(t, "m")) scan.m = static_cast<int>(v->number());
        if (const ConfigValue* v = find(t, "m1")) scan.m1 = static_cast<int>(v->number());
        if (const ConfigValue* v = find(t, "m2")) scan.m2 = static_cast<int>(v->number());
        if (const ConfigValue* v = find(t, "a_min")) scan.a_min = v->number();
        if (const ConfigValue* v = find(t, "a_max")) scan.a_max = v->number();
        if (const ConfigValue* v = find(t, "step")) scan.step = v->number();
        if (const ConfigValue* v = find(t, "grid_points"))
            scan.grid_points = static_cast<int>(v->number());
        if (!(scan.a_min > 0 && scan.a_max < 1 && scan.a_min < scan.a_max))
            throw ConfigError("[scan] range must satisfy 0 < a_min < a_max < 1");
        if (!(scan.step > 0)) throw ConfigError("scan.step must be positive");
        cfg.scan = scan;
    }
    if (cfg.checks.area_scan && !cfg.scan)
        throw ConfigError("checks.area_scan = true requires a [scan] section");

    if (!cfg.catalog_name && !cfg.dsl && !cfg.scan)
        throw ConfigError("missing required section [immersion] (or a [scan] section)");

    return cfg;
}

RunConfig load_config(const std::string& text) {
    return build_run_config(parse_config_document(text));
}

}  // namespace bihsphere
