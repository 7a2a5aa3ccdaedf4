#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "chanreg/cli.hpp"
#include "chanreg/errors.hpp"

namespace chanreg::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
    throw ParseError("key '" + key + "': " + what);
}

double to_real(const std::string& key, const std::string& v) {
    double x = 0.0;
    const char* end = v.data() + v.size();
    auto r = std::from_chars(v.data(), end, x);
    if (r.ec != std::errc() || r.ptr != end) bad(key, "expected a real number, got '" + v + "'");
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    long long x = 0;
    const char* end = v.data() + v.size();
    auto r = std::from_chars(v.data(), end, x);
    if (r.ec != std::errc() || r.ptr != end) bad(key, "expected an integer, got '" + v + "'");
    return x;
}

std::uint64_t to_seed(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    const char* end = v.data() + v.size();
    auto r = std::from_chars(v.data(), end, x);
    if (r.ec != std::errc() || r.ptr != end) bad(key, "expected a nonnegative integer, got '" + v + "'");
    return x;
}

int to_small_int(const std::string& key, const std::string& v) {
    const long long x = to_int(key, v);
    if (x < -1000000000LL || x > 1000000000LL) bad(key, "integer out of range");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    bad(key, "expected on/off, got '" + v + "'");
}

InitKind to_init(const std::string& v) {
    for (auto k : {InitKind::Zero, InitKind::Shear, InitKind::TaylorGreen, InitKind::Random, InitKind::Checkpoint})
        if (to_string(k) == v) return k;
    bad("init", "expected zero|shear|taylor_green|random|checkpoint, got '" + v + "'");
}

ForcingKind to_forcing(const std::string& v) {
    if (v == "none") return ForcingKind::None;
    if (v == "random") return ForcingKind::Random;
    bad("forcing", "expected none|random, got '" + v + "'");
}

std::string num(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

using Setter = std::function<void(SolverConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> s = {
        {"nu", [](SolverConfig& c, const std::string& v) { c.nu = to_real("nu", v); }},
        {"dt", [](SolverConfig& c, const std::string& v) { c.dt = to_real("dt", v); }},
        {"t_end", [](SolverConfig& c, const std::string& v) { c.t_end = to_real("t_end", v); }},
        {"nx", [](SolverConfig& c, const std::string& v) { c.nx = to_small_int("nx", v); }},
        {"ny", [](SolverConfig& c, const std::string& v) { c.ny = to_small_int("ny", v); }},
        {"nz", [](SolverConfig& c, const std::string& v) { c.nz = to_small_int("nz", v); }},
        {"dealias", [](SolverConfig& c, const std::string& v) { c.dealias = to_bool("dealias", v); }},
        {"diag_every", [](SolverConfig& c, const std::string& v) { c.diag_every = to_small_int("diag_every", v); }},
        {"init", [](SolverConfig& c, const std::string& v) { c.init = to_init(v); }},
        {"init_seed", [](SolverConfig& c, const std::string& v) { c.init_seed = to_seed("init_seed", v); }},
        {"init_amplitude", [](SolverConfig& c, const std::string& v) { c.init_amplitude = to_real("init_amplitude", v); }},
        {"init_modes", [](SolverConfig& c, const std::string& v) { c.init_modes = to_small_int("init_modes", v); }},
        {"init_path", [](SolverConfig& c, const std::string& v) { c.init_path = v; }},
        {"forcing", [](SolverConfig& c, const std::string& v) { c.forcing = to_forcing(v); }},
        {"forcing_seed", [](SolverConfig& c, const std::string& v) { c.forcing_seed = to_seed("forcing_seed", v); }},
        {"forcing_amplitude",
         [](SolverConfig& c, const std::string& v) { c.forcing_amplitude = to_real("forcing_amplitude", v); }},
        {"forcing_modes", [](SolverConfig& c, const std::string& v) { c.forcing_modes = to_small_int("forcing_modes", v); }},
        {"lambda1", [](SolverConfig& c, const std::string& v) { c.lambda1 = to_real("lambda1", v); }},
        {"r", [](SolverConfig& c, const std::string& v) { c.r = to_real("r", v); }},
        {"q", [](SolverConfig& c, const std::string& v) { c.q = to_real("q", v); }},
        {"alpha", [](SolverConfig& c, const std::string& v) { c.alpha = to_real("alpha", v); }},
        {"c_generic", [](SolverConfig& c, const std::string& v) { c.c_generic = to_real("c_generic", v); }},
        {"blowup_factor", [](SolverConfig& c, const std::string& v) { c.blowup_factor = to_real("blowup_factor", v); }},
    };
    return s;
}

} // namespace

SolverConfig parse_config_text(const std::string& text) {
    SolverConfig c;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) bad(key, "unknown key");
        if (!seen.insert(key).second) bad(key, "given twice");
        it->second(c, value);
    }
    for (const char* req : {"nu", "dt", "t_end", "nx", "ny", "nz"})
        if (!seen.count(req)) bad(req, "required key is missing");
    c.validate();
    return c;
}

SolverConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string emit_config(const SolverConfig& c) {
    std::ostringstream os;
    os << "nu = " << num(c.nu) << "\n"
       << "dt = " << num(c.dt) << "\n"
       << "t_end = " << num(c.t_end) << "\n"
       << "nx = " << c.nx << "\n"
       << "ny = " << c.ny << "\n"
       << "nz = " << c.nz << "\n"
       << "dealias = " << (c.dealias ? "on" : "off") << "\n"
       << "diag_every = " << c.diag_every << "\n"
       << "init = " << to_string(c.init) << "\n"
       << "init_seed = " << c.init_seed << "\n"
       << "init_amplitude = " << num(c.init_amplitude) << "\n"
       << "init_modes = " << c.init_modes << "\n";
    if (!c.init_path.empty()) os << "init_path = " << c.init_path << "\n";
    os << "forcing = " << to_string(c.forcing) << "\n"
       << "forcing_seed = " << c.forcing_seed << "\n"
       << "forcing_amplitude = " << num(c.forcing_amplitude) << "\n"
       << "forcing_modes = " << c.forcing_modes << "\n"
       << "lambda1 = " << num(c.lambda1) << "\n"
       << "r = " << num(c.r) << "\n"
       << "q = " << num(c.q) << "\n"
       << "alpha = " << num(c.alpha) << "\n"
       << "c_generic = " << num(c.c_generic) << "\n"
       << "blowup_factor = " << num(c.blowup_factor) << "\n";
    return os.str();
}

} // namespace chanreg::cli
