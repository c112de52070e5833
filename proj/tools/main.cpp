// Command-line front end: verify a configured immersion, scan a restricted
// family, or inspect the built-in catalog.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bihsphere/catalog.hpp"
#include "bihsphere/report.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bihsphere::RunConfig config_from(const std::string& path,
                                 const std::vector<std::string>& overrides) {
    bihsphere::ConfigDocument doc = bihsphere::parse_config_document(slurp(path));
    for (const auto& o : overrides) bihsphere::apply_override(doc, o);
    return bihsphere::build_run_config(doc);
}

int run_verify(const std::string& config_path, const std::vector<std::string>& overrides) {
    bihsphere::RunConfig cfg = config_from(config_path, overrides);
    bihsphere::RunResult result = bihsphere::run(cfg);
    std::cout << result.rendered;
    return result.exit_code;
}

int run_scan(const std::string& config_path, const std::vector<std::string>& overrides) {
    bihsphere::RunConfig cfg = config_from(config_path, overrides);
    if (!cfg.scan) throw bihsphere::ConfigError("scan requires a [scan] section");
    cfg.checks.area_scan = true;
    cfg.output.format = bihsphere::OutputFormat::Csv;
    bihsphere::RunResult result = bihsphere::run(cfg);
    if (result.scan_csv && cfg.output.path.empty()) std::cout << *result.scan_csv;
    return result.exit_code;
}

void print_entry(const bihsphere::CatalogEntry& e) {
    std::cout << e.name << "\n  m = " << e.spec.m << ", ambient = " << e.spec.ambient_dim
              << ", codim in sphere = " << e.spec.codim_in_sphere() << "\n  parameters:";
    for (const auto& p : e.spec.params) std::cout << " " << p;
    std::cout << "\n  components:\n";
    for (const auto& c : e.component_sources) std::cout << "    " << c << "\n";
    std::cout << "  domains:\n";
    for (std::size_t i = 0; i < e.spec.domain.size(); ++i) {
        const auto& d = e.spec.domain[i];
        std::cout << "    " << e.spec.params[i] << " in [" << d.lo << ", " << d.hi << "]";
        if (d.period) std::cout << " periodic " << *d.period;
        std::cout << "\n";
    }
    const auto& x = e.expected;
    std::cout << "  expected:";
    if (x.H_norm) std::cout << " |H|=" << *x.H_norm;
    if (x.A2) std::cout << " |A|^2=" << *x.A2;
    if (x.scalar) std::cout << " s=" << *x.scalar;
    if (x.lambda_p) std::cout << " lambda_p=" << *x.lambda_p;
    if (x.lambda_q) std::cout << " lambda_q=" << *x.lambda_q;
    if (x.order) std::cout << " order=[" << x.order->first << "," << x.order->second << "]";
    std::cout << (x.parallel_H ? " parallel-H" : "")
              << (x.pseudo_umbilical ? " pseudo-umbilical" : "")
              << (x.mass_symmetric ? " mass-symmetric" : "")
              << (x.proper_biharmonic ? " proper-biharmonic" : "") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of biharmonic submanifolds of unit spheres"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    auto* verify = app.add_subcommand("verify", "run the configured checks");
    verify->add_option("--config", config_path, "configuration file")->required();
    verify->add_option("--override", overrides, "section.key=value overrides");

    std::string scan_config;
    std::vector<std::string> scan_overrides;
    auto* scan = app.add_subcommand("scan", "scan a restricted family (CSV output)");
    scan->add_option("--config", scan_config, "configuration file")->required();
    scan->add_option("--override", scan_overrides, "section.key=value overrides");

    auto* catalog = app.add_subcommand("catalog", "inspect built-in immersions");
    auto* list = catalog->add_subcommand("list", "list catalog names");
    std::string show_name;
    auto* show = catalog->add_subcommand("show", "show one catalog entry");
    show->add_option("name", show_name, "catalog entry name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return run_verify(config_path, overrides);
        if (scan->parsed()) return run_scan(scan_config, scan_overrides);
        if (catalog->parsed()) {
            if (list->parsed()) {
                for (const auto& n : bihsphere::catalog_names()) std::cout << n << "\n";
                return 0;
            }
            if (show->parsed()) {
                print_entry(bihsphere::catalog_entry(show_name, {}));
                return 0;
            }
            std::cerr << "catalog requires 'list' or 'show <name>'\n";
            return 2;
        }
    } catch (const bihsphere::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bihsphere::NumericalAbort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
