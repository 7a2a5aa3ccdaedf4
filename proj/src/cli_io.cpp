#include <bit>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "chanreg/cli.hpp"
#include "chanreg/errors.hpp"
#include "json.hpp"

namespace chanreg::cli {

namespace {

constexpr char kMagic[8] = {'C', 'H', 'R', 'G', 'C', 'K', 'P', 'T'};
constexpr unsigned char kVersion = 1;

std::string hex(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::hex);
    return std::string(buf, r.ptr);
}

double from_hex(const std::string& s) {
    double x = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), x, std::chars_format::hex);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw IoError("checkpoint: bad number '" + s + "'");
    return x;
}

std::string shortest(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& in, std::size_t& pos) {
    if (pos + 8 > in.size()) throw IoError("checkpoint: truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    pos += 8;
    return v;
}

std::string get_block(const std::string& in, std::size_t& pos) {
    const std::uint64_t n = get_u64(in, pos);
    if (n > in.size() - pos) throw IoError("checkpoint: truncated block");
    std::string s = in.substr(pos, n);
    pos += n;
    return s;
}

std::map<std::string, std::string> parse_kv(const std::string& text, char sep) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, sep)) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw IoError("checkpoint: bad descriptor entry '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

const std::string& at(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw IoError("checkpoint: descriptor lacks '" + key + "'");
    return it->second;
}

int as_int(const std::string& s) {
    int v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw IoError("checkpoint: bad integer '" + s + "'");
    return v;
}

// record fields stored in the descriptor, in a fixed order
using RecordMember = double DiagnosticsRecord::*;
const std::vector<std::pair<const char*, RecordMember>>& record_members() {
    static const std::vector<std::pair<const char*, RecordMember>> m = {
        {"t", &DiagnosticsRecord::t},
        {"energy", &DiagnosticsRecord::energy},
        {"gradh_v", &DiagnosticsRecord::gradh_v},
        {"gradh_w", &DiagnosticsRecord::gradh_w},
        {"vz", &DiagnosticsRecord::vz},
        {"wz", &DiagnosticsRecord::wz},
        {"pz_l2q", &DiagnosticsRecord::pz_l2q},
        {"vtilde_r", &DiagnosticsRecord::vtilde_r},
        {"h1_v", &DiagnosticsRecord::h1_v},
        {"h1_w", &DiagnosticsRecord::h1_w},
        {"criterion_accum", &DiagnosticsRecord::criterion_accum},
        {"energy_residual", &DiagnosticsRecord::energy_residual},
        {"pz_r_accum", &DiagnosticsRecord::pz_r_accum},
        {"forcing_work", &DiagnosticsRecord::forcing_work},
        {"divergence", &DiagnosticsRecord::divergence},
        {"reconstruction_error", &DiagnosticsRecord::reconstruction_error},
    };
    return m;
}

using InitMember = double InitNorms::*;
const std::vector<std::pair<const char*, InitMember>>& init_members() {
    static const std::vector<std::pair<const char*, InitMember>> m = {
        {"v0_sq", &InitNorms::v0_sq}, {"w0_sq", &InitNorms::w0_sq}, {"v0_h1", &InitNorms::v0_h1},
        {"w0_h1", &InitNorms::w0_h1}, {"f_sq", &InitNorms::f_sq},   {"g_sq", &InitNorms::g_sq},
        {"f_r_pow", &InitNorms::f_r_pow},
    };
    return m;
}

void put_field(std::string& out, const std::string& name, const ScalarField& f) {
    const Grid& g = f.grid();
    std::ostringstream d;
    d << "name=" << name << " parity=" << to_string(f.parity()) << " repr=" << to_string(f.repr())
      << " nx=" << g.nx() << " ny=" << g.ny() << " nz=" << g.nz();
    const std::string desc = d.str();
    put_u64(out, desc.size());
    out += desc;
    for (const Complex& c : f.coeffs()) {
        put_u64(out, std::bit_cast<std::uint64_t>(c.real()));
        put_u64(out, std::bit_cast<std::uint64_t>(c.imag()));
    }
}

ScalarField get_field(const std::string& in, std::size_t& pos, const std::string& name) {
    const auto kv = parse_kv(get_block(in, pos), ' ');
    if (at(kv, "name") != name) throw IoError("checkpoint: expected field '" + name + "'");
    if (at(kv, "repr") != "spectral") throw IoError("checkpoint: field '" + name + "' is not spectral");
    const std::string par = at(kv, "parity");
    if (par != "even" && par != "odd") throw IoError("checkpoint: bad parity '" + par + "'");
    const Grid g(as_int(at(kv, "nx")), as_int(at(kv, "ny")), as_int(at(kv, "nz")));
    std::vector<Complex> c(g.size());
    for (auto& x : c) {
        const double re = std::bit_cast<double>(get_u64(in, pos));
        const double im = std::bit_cast<double>(get_u64(in, pos));
        x = Complex(re, im);
    }
    return ScalarField::spectral(g, par == "even" ? Parity::EvenZ : Parity::OddZ, std::move(c));
}

} // namespace

std::string checkpoint_bytes(const ResumePoint& p) {
    std::string out(kMagic, kMagic + 8);
    out.push_back(static_cast<char>(kVersion));
    std::ostringstream d;
    d << "t=" << hex(p.state.t) << "\n"
      << "step=" << p.step << "\n"
      << "has_previous=" << (p.previous ? 1 : 0) << "\n";
    for (const auto& [k, m] : record_members()) d << "record." << k << "=" << hex(p.last_record.*m) << "\n";
    for (const auto& [k, m] : init_members()) d << "init." << k << "=" << hex(p.init.*m) << "\n";
    const std::string desc = d.str();
    put_u64(out, desc.size());
    out += desc;
    put_field(out, "v1", p.state.v1);
    put_field(out, "v2", p.state.v2);
    put_field(out, "w", p.state.w);
    if (p.previous) {
        put_field(out, "n1_prev", p.previous->n1);
        put_field(out, "n2_prev", p.previous->n2);
        put_field(out, "nw_prev", p.previous->nw);
    }
    return out;
}

ResumePoint checkpoint_from_bytes(const std::string& in) {
    if (in.size() < 9 || in.compare(0, 8, std::string(kMagic, 8)) != 0) throw IoError("checkpoint: bad magic");
    if (static_cast<unsigned char>(in[8]) != kVersion) throw IoError("checkpoint: unsupported version");
    std::size_t pos = 9;
    const auto kv = parse_kv(get_block(in, pos), '\n');
    const double t = from_hex(at(kv, "t"));
    auto v1 = get_field(in, pos, "v1");
    auto v2 = get_field(in, pos, "v2");
    auto w = get_field(in, pos, "w");
    if (!(v1.grid() == v2.grid()) || !(v1.grid() == w.grid())) throw IoError("checkpoint: grid mismatch between fields");
    ResumePoint p{VelocityState{std::move(v1), std::move(v2), std::move(w), t}};
    p.step = std::stol(at(kv, "step"));
    for (const auto& [k, m] : record_members()) p.last_record.*m = from_hex(at(kv, std::string("record.") + k));
    for (const auto& [k, m] : init_members()) p.init.*m = from_hex(at(kv, std::string("init.") + k));
    if (at(kv, "has_previous") == "1") {
        auto n1 = get_field(in, pos, "n1_prev");
        auto n2 = get_field(in, pos, "n2_prev");
        auto nw = get_field(in, pos, "nw_prev");
        p.previous = Nonlinear{std::move(n1), std::move(n2), std::move(nw)};
    }
    if (pos != in.size()) throw IoError("checkpoint: trailing bytes");
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw IoError("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

void write_checkpoint(const std::string& path, const ResumePoint& p) { write_file_atomic(path, checkpoint_bytes(p)); }
ResumePoint read_checkpoint(const std::string& path) { return checkpoint_from_bytes(read_file(path)); }

// --------------------------------------------------------------------- csv

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> c = {"t",        "energy", "gradh_v", "gradh_w", "vz",
                                               "wz",       "pz_l2q", "vtilde_r", "h1_v",   "h1_w",
                                               "criterion_accum", "energy_residual"};
    return c;
}

std::string csv_text(const std::vector<DiagnosticsRecord>& rec) {
    std::ostringstream os;
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : rec) {
        const double v[] = {r.t,  r.energy, r.gradh_v, r.gradh_w, r.vz, r.wz, r.pz_l2q, r.vtilde_r,
                            r.h1_v, r.h1_w, r.criterion_accum, r.energy_residual};
        for (std::size_t i = 0; i < std::size(v); ++i) os << (i ? "," : "") << shortest(v[i]);
        os << "\n";
    }
    return os.str();
}

std::vector<DiagnosticsRecord> parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ParseError("csv: empty file");
    std::string expected;
    for (std::size_t i = 0; i < csv_columns().size(); ++i) expected += (i ? "," : "") + csv_columns()[i];
    if (line != expected) throw ParseError("csv: header does not match the schema");
    std::vector<DiagnosticsRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> v;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            double x = 0.0;
            auto r = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (r.ec != std::errc() || r.ptr != cell.data() + cell.size())
                throw ParseError("csv: bad number '" + cell + "'");
            v.push_back(x);
        }
        if (v.size() != csv_columns().size()) throw ParseError("csv: wrong number of columns");
        DiagnosticsRecord d;
        d.t = v[0], d.energy = v[1], d.gradh_v = v[2], d.gradh_w = v[3], d.vz = v[4], d.wz = v[5];
        d.pz_l2q = v[6], d.vtilde_r = v[7], d.h1_v = v[8], d.h1_w = v[9], d.criterion_accum = v[10];
        d.energy_residual = v[11];
        out.push_back(d);
    }
    return out;
}

// ---------------------------------------------------------------- manifest

std::string git_blob_hash(const std::string& text) {
    const std::string blob = "blob " + std::to_string(text.size()) + std::string(1, '\0') + text;
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1)
        throw IoError("sha1 digest failed");
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(digits[md[i] >> 4]);
        out.push_back(digits[md[i] & 15]);
    }
    return out;
}

std::string manifest_json(const Manifest& m) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    std::istringstream is(m.config_text);
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = cfg;
    j["config_hash"] = git_blob_hash(m.config_text);
    j["start_time"] = m.start_time;
    j["end_time"] = m.end_time;
    nlohmann::ordered_json outs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.outputs) outs[k] = v;
    j["outputs"] = outs;
    j["exit_status"] = m.exit_status;
    return j.dump(2) + "\n";
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace chanreg::cli
