// llc-cli: batch front end for the interface-crack library.
//
//   llc-cli <command> [--config FILE] [--key value ...]
//
// Commands: constants, sweep, verify, perturb, weightfn, kernel.
// Config files hold `key = value` lines with `#` comments; flags win.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <llc/llc.hpp>

namespace {

using llc::cplx;
using json = nlohmann::ordered_json;

// Every key the config grammar accepts, with its help text.
const std::vector<std::pair<std::string, std::string>> numeric_keys = {
    {"nu_plus", "Poisson ratio of the upper material"},
    {"mu_plus", "shear modulus of the upper material"},
    {"nu_minus", "Poisson ratio of the lower material"},
    {"mu_minus", "shear modulus of the lower material"},
    {"nu_both", "Poisson ratio used for both materials in a sweep"},
    {"eta_min", "sweep start"},
    {"eta_max", "sweep end"},
    {"eta_steps", "number of sweep points"},
    {"threads", "sweep workers (0 = hardware)"},
    {"xi_min", "weightfn grid start"},
    {"xi_max", "weightfn grid end"},
    {"xi_steps", "weightfn grid size"},
    {"sign_lambda", "+1 or -1"},
    {"weight", "weight function index 1, 2 or 3"},
    {"K_re", "baseline K_I"},
    {"K_im", "baseline K_II"},
    {"K3", "baseline K_III"},
    {"dKda_re", "real part of dK/da"},
    {"dKda_im", "imaginary part of dK/da"},
    {"dK3da", "dK_III/da"},
    {"delta", "amplitude multiplying the profile"},
    {"x", "kernel distance from the front (x < 0 behind it)"},
    {"t_min", "kernel t grid start"},
    {"t_max", "kernel t grid end"},
    {"t_steps", "kernel t grid size"},
    {"kernel_Y", "kernel truncation in lambda |x|"},
    {"tol_bimaterial", ""},
    {"tol_pi4", ""},
    {"tol_factorization", ""},
    {"tol_whprob", ""},
    {"tol_cond", ""},
    {"tol_coupling", ""},
    {"tol_gamma_inversion", ""},
    {"tol_identity", ""},
    {"tol_eps0", ""},
};
const std::vector<std::pair<std::string, std::string>> string_keys = {
    {"profile_path", "two-column profile file: x3, delta_phi"},
    {"output_path", "output file (stdout when absent)"},
    {"format", "csv or json"},
};

class Config {
public:
    std::map<std::string, std::string> values;

    bool has(const std::string& k) const { return values.count(k) != 0; }

    double num(const std::string& k) const
    {
        auto it = values.find(k);
        if (it == values.end()) throw llc::ConfigError("missing required key: " + k);
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(k);
            return v;
        } catch (const std::logic_error&) {
            throw llc::ConfigError("key " + k + " is not a number: " + it->second);
        }
    }
    double num(const std::string& k, double fallback) const { return has(k) ? num(k) : fallback; }

    int integer(const std::string& k, int fallback) const
    {
        if (!has(k)) return fallback;
        const double v = num(k);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw llc::ConfigError("key " + k + " must be an integer");
        return int(v);
    }

    std::string str(const std::string& k, const std::string& fallback = "") const
    {
        auto it = values.find(k);
        return it == values.end() ? fallback : it->second;
    }
};

llc::MaterialPair material(const Config& c)
{
    for (const char* k : {"nu_plus", "mu_plus", "nu_minus", "mu_minus"})
        if (!c.has(k)) throw llc::ConfigError(std::string("missing required key: ") + k);
    const llc::MaterialPair p{c.num("nu_plus"), c.num("mu_plus"), c.num("nu_minus"), c.num("mu_minus")};
    try {
        llc::validate(p);
    } catch (const llc::InvalidMaterial& e) {
        throw llc::ConfigError(e.what());
    }
    return p;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

class Output {
public:
    explicit Output(const Config& c) : path_(c.str("output_path"))
    {
        if (!path_.empty()) {
            file_.open(path_, std::ios::binary);
            if (!file_) throw llc::ConfigError("cannot open output_path: " + path_);
        }
    }
    std::ostream& os() { return path_.empty() ? std::cout : file_; }

private:
    std::string path_;
    std::ofstream file_;
};

// flat object as JSON, or as a header line plus one row
void emit_flat(const json& obj, const std::string& format, std::ostream& os)
{
    if (format == "json") {
        os << obj.dump(2) << "\n";
        return;
    }
    std::string head, row;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!head.empty()) {
            head += ',';
            row += ',';
        }
        head += it.key();
        if (it->is_number_float())
            row += fmt(it->get<double>());
        else if (it->is_string())
            row += it->get<std::string>();
        else
            row += it->dump();
    }
    os << head << "\n" << row << "\n";
}

// columns of equal length as CSV, or as a flat object of arrays
void emit_table(const std::vector<std::string>& names, const std::vector<std::vector<double>>& cols,
                const std::string& format, std::ostream& os)
{
    if (format == "json") {
        json obj;
        for (std::size_t i = 0; i < names.size(); ++i) obj[names[i]] = cols[i];
        os << obj.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
    os << "\n";
    const std::size_t n = cols.empty() ? 0 : cols[0].size();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << fmt(cols[i][r]);
        os << "\n";
    }
}

void put(json& o, const std::string& name, cplx v)
{
    o[name + "_re"] = v.real();
    o[name + "_im"] = v.imag();
}

int cmd_constants(const Config& cfg, const std::string& format)
{
    const llc::BimaterialConstants c = llc::derive_constants(material(cfg));
    const llc::LLConstants ex = llc::exact_constants(c), as = llc::asymptotic_constants(c);
    json o;
    o["b"] = c.b;
    o["d"] = c.d;
    o["e"] = c.e;
    o["epsilon"] = c.epsilon;
    o["d_star"] = c.d_star;
    o["e_star"] = c.e_star;
    o["nu_composite"] = c.nu_composite;
    o["swapped"] = c.pair.swapped;
    o["degenerate"] = c.degenerate;
    put(o, "gamma_plus", ex.gamma_plus);
    put(o, "gamma_minus", ex.gamma_minus);
    put(o, "gamma_III", ex.gamma_III);
    put(o, "gamma_z", ex.gamma_z);
    o["gamma"] = ex.gamma;
    put(o, "gamma_plus_asym", as.gamma_plus);
    put(o, "gamma_minus_asym", as.gamma_minus);
    put(o, "gamma_III_asym", as.gamma_III);
    put(o, "gamma_z_asym", as.gamma_z);
    o["gamma_asym"] = as.gamma;
    Output out(cfg);
    emit_flat(o, format, out.os());
    return 0;
}

int cmd_sweep(const Config& cfg, const std::string& format)
{
    double np, nm;
    if (cfg.has("nu_both")) {
        np = nm = cfg.num("nu_both");
    } else {
        if (!cfg.has("nu_plus") || !cfg.has("nu_minus"))
            throw llc::ConfigError("missing required key: nu_both (or nu_plus and nu_minus)");
        np = cfg.num("nu_plus");
        nm = cfg.num("nu_minus");
    }
    const double lo = cfg.num("eta_min", -0.9), hi = cfg.num("eta_max", 0.9);
    const int n = cfg.integer("eta_steps", 181);
    if (n < 1) throw llc::ConfigError("eta_steps must be positive");
    if (!(lo > -1 && hi < 1 && lo <= hi)) throw llc::ConfigError("eta range must lie in (-1, 1)");
    for (double nu : {np, nm})
        if (!(nu >= 0 && nu <= 0.5)) throw llc::ConfigError("Poisson ratios must lie in [0, 0.5]");
    const auto recs = llc::sweep(np, nm, llc::linspace(lo, hi, n), unsigned(cfg.integer("threads", 0)));

    std::vector<std::string> names = {"eta", "epsilon"};
    const char* cn[5] = {"gamma_plus", "gamma_minus", "gamma_III", "gamma_z", "gamma"};
    for (const char* s : cn)
        for (const char* f : {"re_exact", "im_exact", "re_asym", "im_asym", "modulus_ratio"})
            names.push_back(std::string(s) + "_" + f);
    std::vector<std::vector<double>> cols(names.size());
    for (const auto& r : recs) {
        const cplx e[5] = {r.exact.gamma_plus, r.exact.gamma_minus, r.exact.gamma_III, r.exact.gamma_z, r.exact.gamma};
        const cplx a[5] = {r.asymptotic.gamma_plus, r.asymptotic.gamma_minus, r.asymptotic.gamma_III,
                           r.asymptotic.gamma_z, r.asymptotic.gamma};
        std::size_t i = 0;
        cols[i++].push_back(r.eta);
        cols[i++].push_back(r.epsilon);
        for (int m = 0; m < 5; ++m) {
            cols[i++].push_back(e[m].real());
            cols[i++].push_back(e[m].imag());
            cols[i++].push_back(a[m].real());
            cols[i++].push_back(a[m].imag());
            cols[i++].push_back(r.modulus_ratios[m]);
        }
    }
    Output out(cfg);
    emit_table(names, cols, format, out.os());
    return 0;
}

int cmd_verify(const Config& cfg, const std::string& format)
{
    llc::VerifyTolerances t;
    t.bimaterial = cfg.num("tol_bimaterial", t.bimaterial);
    t.pi4 = cfg.num("tol_pi4", t.pi4);
    t.factorization = cfg.num("tol_factorization", t.factorization);
    t.whprob = cfg.num("tol_whprob", t.whprob);
    t.cond = cfg.num("tol_cond", t.cond);
    t.coupling = cfg.num("tol_coupling", t.coupling);
    t.gamma_inversion = cfg.num("tol_gamma_inversion", t.gamma_inversion);
    t.identity = cfg.num("tol_identity", t.identity);
    t.eps0 = cfg.num("tol_eps0", t.eps0);
    const auto res = llc::run_verify(material(cfg), t);
    bool ok = true;
    json o;
    for (const auto& r : res) {
        ok = ok && r.pass();
        const char* tag = r.skipped ? "SKIP" : r.pass() ? "PASS" : "FAIL";
        std::printf("%s %-20s value=%.3e tol=%.1e%s%s\n", tag, r.name.c_str(), r.value, r.tol,
                    r.note.empty() ? "" : "  ", r.note.c_str());
        o[r.name + "_value"] = r.value;
        o[r.name + "_status"] = tag;
    }
    o["all_pass"] = ok;
    if (cfg.has("output_path")) {
        Output out(cfg);
        emit_flat(o, format, out.os());
    }
    return ok ? 0 : 1;
}

std::pair<std::vector<double>, std::vector<double>> read_profile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw llc::ConfigError("cannot read profile_path: " + path);
    std::vector<double> x, y;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        for (char& ch : line)
            if (ch == ',' || ch == '\t' || ch == ';') ch = ' ';
        std::istringstream ss(line);
        double a, b;
        if (!(ss >> a)) continue;
        if (!(ss >> b)) throw llc::ConfigError("profile line " + std::to_string(ln) + " needs two columns");
        x.push_back(a);
        y.push_back(b);
    }
    return {x, y};
}

int cmd_perturb(const Config& cfg, const std::string& format)
{
    if (!cfg.has("profile_path")) throw llc::ConfigError("missing required key: profile_path");
    const llc::BimaterialConstants c = llc::derive_constants(material(cfg));
    const auto [x, phi] = read_profile(cfg.str("profile_path"));
    const std::size_t n = x.size();
    if (n < 2 || !llc::fft::is_power_of_two(n))
        throw llc::ConfigError("profile must hold a power-of-two number of samples, got " + std::to_string(n));
    const double dx = x[1] - x[0];
    if (!(dx > 0)) throw llc::ConfigError("profile x3 must increase");
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i] - x[0] - dx * double(i)) > 1e-9 * dx * double(n))
            throw llc::ConfigError("profile x3 must be uniformly spaced");
    llc::PerturbationParameters p;
    p.K = cplx(cfg.num("K_re", 0), cfg.num("K_im", 0));
    p.K_III = cfg.num("K3", 0);
    p.dK_da = cplx(cfg.num("dKda_re", 0), cfg.num("dKda_im", 0));
    p.dKIII_da = cfg.num("dK3da", 0);
    p.delta = cfg.num("delta", 1);
    const auto r = llc::perturb_front(phi, dx * double(n), p, llc::exact_constants(c), c, x[0]);
    std::vector<std::vector<double>> cols(4);
    for (std::size_t i = 0; i < n; ++i) {
        cols[0].push_back(r.x3[i]);
        cols[1].push_back(r.dK[i].real());
        cols[2].push_back(r.dK[i].imag());
        cols[3].push_back(r.dK_III[i]);
    }
    Output out(cfg);
    emit_table({"x3", "dK1", "dK2", "dK3"}, cols, format, out.os());
    return 0;
}

int cmd_weightfn(const Config& cfg, const std::string& format)
{
    const llc::BimaterialConstants c = llc::derive_constants(material(cfg));
    const int j = cfg.integer("weight", 1), sl = cfg.integer("sign_lambda", 1);
    if (j < 1 || j > 3) throw llc::ConfigError("weight must be 1, 2 or 3");
    if (sl != 1 && sl != -1) throw llc::ConfigError("sign_lambda must be +1 or -1");
    const int n = cfg.integer("xi_steps", 101);
    const double lo = cfg.num("xi_min", -10), hi = cfg.num("xi_max", 10);
    if (n < 1 || !(lo <= hi)) throw llc::ConfigError("bad xi grid");
    const llc::KernelContext k(c);
    const llc::WeightFunctionSet w(llc::WF(j), k);
    std::vector<std::string> names = {"xi"};
    for (const char* s : {"U1", "U2", "U3", "S12", "S22", "S32"}) {
        names.push_back(std::string(s) + "_re");
        names.push_back(std::string(s) + "_im");
    }
    std::vector<std::vector<double>> cols(names.size());
    for (double xi : llc::linspace(lo, hi, n)) {
        const auto v = w.eval(xi, sl).physical();
        cols[0].push_back(xi);
        for (int m = 0; m < 6; ++m) {
            cols[1 + 2 * m].push_back(v[m].real());
            cols[2 + 2 * m].push_back(v[m].imag());
        }
    }
    Output out(cfg);
    emit_table(names, cols, format, out.os());
    return 0;
}

int cmd_kernel(const Config& cfg, const std::string& format)
{
    const llc::BimaterialConstants c = llc::derive_constants(material(cfg));
    const double x = cfg.num("x", -1);
    if (x == 0) throw llc::ConfigError("x must be nonzero");
    const int n = cfg.integer("t_steps", 5);
    const double lo = cfg.num("t_min", 0.5), hi = cfg.num("t_max", 2.5);
    if (n < 1 || !(lo <= hi)) throw llc::ConfigError("bad t grid");
    llc::KernelOptions opt;
    opt.Y = cfg.num("kernel_Y", opt.Y);
    if (!(opt.Y > 0)) throw llc::ConfigError("kernel_Y must be positive");
    const llc::KernelContext k(c);
    const llc::KernelOracle O(k, opt);
    std::vector<std::string> names = {"x", "t"};
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (const char* part : {"_re", "_im"}) names.push_back("h" + std::to_string(a) + std::to_string(b) + part);
    names.push_back("h33_single");
    std::vector<std::vector<double>> cols(names.size());
    for (double t : llc::linspace(lo, hi, n)) {
        const llc::Mat3 h = O.matrix(x, t);
        std::size_t i = 0;
        cols[i++].push_back(x);
        cols[i++].push_back(t);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                cols[i++].push_back(h(a, b).real());
                cols[i++].push_back(h(a, b).imag());
            }
        cols[i++].push_back(O.h33_single(x, t).real());
    }
    Output out(cfg);
    emit_table(names, cols, format, out.os());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interface crack weight functions and front perturbation constants"};
    app.set_config("--config", "", "file of key = value lines")->check(CLI::ExistingFile);
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string command;
    app.add_option("command", command, "constants | sweep | verify | perturb | weightfn | kernel")
        ->required()
        ->check(CLI::IsMember({"constants", "sweep", "verify", "perturb", "weightfn", "kernel"}));
    std::map<std::string, std::string> raw;
    for (const auto& [k, help] : numeric_keys) app.add_option("--" + k, raw[k], help);
    for (const auto& [k, help] : string_keys) app.add_option("--" + k, raw[k], help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Config cfg;
    for (const auto& [k, v] : raw)
        if (app.count("--" + k) > 0) cfg.values[k] = v;

    try {
        const std::string format = cfg.str("format", command == "constants" ? "json" : "csv");
        if (format != "csv" && format != "json") throw llc::ConfigError("format must be csv or json");
        if (command == "constants") return cmd_constants(cfg, format);
        if (command == "sweep") return cmd_sweep(cfg, format);
        if (command == "verify") return cmd_verify(cfg, format);
        if (command == "perturb") return cmd_perturb(cfg, format);
        if (command == "weightfn") return cmd_weightfn(cfg, format);
        return cmd_kernel(cfg, format);
    } catch (const llc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
