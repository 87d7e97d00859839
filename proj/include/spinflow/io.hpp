#pragma once

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "spinflow/diagnostics.hpp"
#include "spinflow/fields.hpp"
#include "spinflow/generators.hpp"
#include "spinflow/solver.hpp"

namespace spinflow {

static_assert(std::endian::native == std::endian::little,
              "SPNF is little-endian; big-endian hosts are not supported");

// ---------------------------------------------------------------------------
// SPNF field files
//
//   magic   4 bytes "SPNF"
//   version u32 = 1
//   layout  u8: 0 = physical samples, 1 = full spectral box
//   n       3 x u32
//   l       3 x f64
//   time    f64
//   reserved 32 zero bytes
//
// Physical payload: 3*N doubles, component-major, x fastest.
// Spectral payload: 3*N complex doubles (re, im interleaved), full redundant
// box — twice the size of a Hermitian-reduced file but trivially auditable.
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t spnf_version = 1;
inline constexpr std::size_t spnf_header_bytes = 4 + 4 + 1 + 12 + 24 + 8 + 32;

enum class FieldLayout : std::uint8_t { physical = 0, spectral = 1 };

struct FieldFile {
    double time = 0.0;
    std::variant<PhysicalVectorField, SpectralVectorField> field;

    FieldLayout layout() const {
        return std::holds_alternative<PhysicalVectorField>(field) ? FieldLayout::physical
                                                                  : FieldLayout::spectral;
    }
    const Lattice& lattice() const {
        return std::visit([](const auto& f) -> const Lattice& { return f.lattice(); },
                          field);
    }
};

namespace detail {

inline void append_bytes(std::string& buf, const void* p, std::size_t n) {
    buf.append(static_cast<const char*>(p), n);
}

template <typename T>
inline void append_value(std::string& buf, T v) {
    append_bytes(buf, &v, sizeof(T));
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), std::streamsize(bytes.size()));
        if (!out) throw Error("short write: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline void write_field(const std::filesystem::path& path, const FieldFile& file) {
    const Lattice& lat = file.lattice();
    std::string buf;
    buf.reserve(spnf_header_bytes + std::size_t(lat.size()) * 3 * sizeof(double) * 2);
    detail::append_bytes(buf, "SPNF", 4);
    detail::append_value<std::uint32_t>(buf, spnf_version);
    detail::append_value<std::uint8_t>(buf, std::uint8_t(file.layout()));
    for (int a = 0; a < 3; ++a)
        detail::append_value<std::uint32_t>(buf, std::uint32_t(lat.n()[a]));
    for (int a = 0; a < 3; ++a) detail::append_value<double>(buf, lat.l()[a]);
    detail::append_value<double>(buf, file.time);
    buf.append(32, '\0');

    if (const auto* p = std::get_if<PhysicalVectorField>(&file.field)) {
        detail::append_bytes(buf, p->data().data(), p->data().size() * sizeof(double));
    } else {
        const auto& s = std::get<SpectralVectorField>(file.field);
        detail::append_bytes(buf, s.coeff().data(), s.coeff().size() * sizeof(Complex));
    }
    detail::write_file_atomic(path, buf);
}

inline FieldFile read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());

    if (bytes.size() < spnf_header_bytes)
        throw TruncatedFile(path.string() + ": header needs " +
                            std::to_string(spnf_header_bytes) + " bytes, file has " +
                            std::to_string(bytes.size()));
    if (std::memcmp(bytes.data(), "SPNF", 4) != 0)
        throw BadMagic(path.string() + ": bad magic at offset 0");
    std::uint32_t version;
    std::memcpy(&version, bytes.data() + 4, 4);
    if (version != spnf_version)
        throw VersionMismatch(path.string() + ": version " + std::to_string(version) +
                              " at offset 4, expected " + std::to_string(spnf_version));
    const std::uint8_t layout = std::uint8_t(bytes[8]);
    if (layout > 1) throw Error(path.string() + ": unknown layout byte at offset 8");
    std::uint32_t n_raw[3];
    std::memcpy(n_raw, bytes.data() + 9, 12);
    double l_raw[3], time;
    std::memcpy(l_raw, bytes.data() + 21, 24);
    std::memcpy(&time, bytes.data() + 45, 8);

    const Lattice lat(Int3{int(n_raw[0]), int(n_raw[1]), int(n_raw[2])},
                      Vec3{l_raw[0], l_raw[1], l_raw[2]});
    const std::size_t values = std::size_t(lat.size()) * 3;
    const std::size_t payload =
        layout == 0 ? values * sizeof(double) : values * sizeof(Complex);
    if (bytes.size() != spnf_header_bytes + payload)
        throw TruncatedFile(path.string() + ": expected " +
                            std::to_string(spnf_header_bytes + payload) + " bytes, got " +
                            std::to_string(bytes.size()));

    if (layout == 0) {
        PhysicalVectorField f(lat);
        std::memcpy(f.data().data(), bytes.data() + spnf_header_bytes, payload);
        return FieldFile{time, std::move(f)};
    }
    SpectralVectorField f(lat);
    std::memcpy(f.coeff().data(), bytes.data() + spnf_header_bytes, payload);
    return FieldFile{time, std::move(f)};
}

// ---------------------------------------------------------------------------
// Diagnostics CSV
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_tag(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace detail

inline std::string csv_header(const DiagOptions& opts) {
    std::string h = "t,energy,enstrophy,helicity,hhalf_plus,hhalf_minus,h3half_plus,h3half_minus";
    for (int n : opts.n_list) {
        h += ",hs_plus_" + std::to_string(n);
        h += ",hs_minus_" + std::to_string(n);
    }
    for (double th : opts.theta_list) h += ",det_theta_" + detail::format_tag(th);
    h += ",det_zero,max_u,max_omega,q_dyn,omega_lowpass_max,momentum_x,momentum_y,momentum_z";
    return h;
}

inline std::string csv_row(const DiagRecord& r) {
    using detail::format_double;
    std::string row = format_double(r.t);
    const auto add = [&row](double v) { row += "," + format_double(v); };
    add(r.energy);
    add(r.enstrophy);
    add(r.helicity);
    add(r.hhalf_plus);
    add(r.hhalf_minus);
    add(r.h3half_plus);
    add(r.h3half_minus);
    for (std::size_t i = 0; i < r.hs_plus.size(); ++i) {
        add(r.hs_plus[i]);
        add(r.hs_minus[i]);
    }
    for (double d : r.det_theta) add(d);
    add(r.det_zero);
    add(r.max_u);
    add(r.max_omega);
    row += "," + std::to_string(r.q_dyn);
    add(r.omega_lowpass_max);
    add(r.momentum[0]);
    add(r.momentum[1]);
    add(r.momentum[2]);
    return row;
}

inline void emit_csv(const std::vector<DiagRecord>& records, const DiagOptions& opts,
                     const std::filesystem::path& path) {
    if (records.empty()) throw Error("emit_csv: no records");
    std::string buf = csv_header(opts) + "\n";
    for (const DiagRecord& r : records) buf += csv_row(r) + "\n";
    detail::write_file_atomic(path, buf);
}

/// Parse a diagnostics CSV back into records (17 significant digits round-trip
/// doubles exactly).  The column lists are recovered from the header.
inline std::vector<DiagRecord> read_csv(const std::filesystem::path& path,
                                        DiagOptions* opts_out = nullptr) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error(path.string() + ": empty CSV");

    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    DiagOptions opts;
    for (const std::string& c : cols) {
        if (c.rfind("hs_plus_", 0) == 0)
            opts.n_list.push_back(std::stoi(c.substr(8)));
        else if (c.rfind("det_theta_", 0) == 0)
            opts.theta_list.push_back(std::stod(c.substr(10)));
    }
    if (opts_out) *opts_out = opts;

    std::vector<DiagRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<double> v;
        while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
        if (v.size() != cols.size())
            throw Error(path.string() + ": row has " + std::to_string(v.size()) +
                        " fields, header has " + std::to_string(cols.size()));
        DiagRecord r;
        std::size_t i = 0;
        r.t = v[i++];
        r.energy = v[i++];
        r.enstrophy = v[i++];
        r.helicity = v[i++];
        r.hhalf_plus = v[i++];
        r.hhalf_minus = v[i++];
        r.h3half_plus = v[i++];
        r.h3half_minus = v[i++];
        for (std::size_t k = 0; k < opts.n_list.size(); ++k) {
            r.hs_plus.push_back(v[i++]);
            r.hs_minus.push_back(v[i++]);
        }
        for (std::size_t k = 0; k < opts.theta_list.size(); ++k)
            r.det_theta.push_back(v[i++]);
        r.det_zero = v[i++];
        r.max_u = v[i++];
        r.max_omega = v[i++];
        r.q_dyn = int(v[i++]);
        r.omega_lowpass_max = v[i++];
        r.momentum = {v[i], v[i + 1], v[i + 2]};
        records.push_back(std::move(r));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Legacy-VTK structured points (ASCII), for offline viewers
// ---------------------------------------------------------------------------

inline void export_vtk(const PhysicalVectorField& field,
                       const std::vector<std::pair<std::string, PhysicalScalarField>>& scalars,
                       const std::filesystem::path& path,
                       const std::string& title = "spinflow field") {
    const Lattice& lat = field.lattice();
    const auto& n = lat.n();
    const auto N = lat.size();
    std::string buf;
    buf += "# vtk DataFile Version 3.0\n";
    buf += title + "\n";
    buf += "ASCII\n";
    buf += "DATASET STRUCTURED_POINTS\n";
    buf += "DIMENSIONS " + std::to_string(n[0]) + " " + std::to_string(n[1]) + " " +
           std::to_string(n[2]) + "\n";
    buf += "ORIGIN 0 0 0\n";
    buf += "SPACING " + detail::format_tag(lat.h(0)) + " " + detail::format_tag(lat.h(1)) +
           " " + detail::format_tag(lat.h(2)) + "\n";
    buf += "POINT_DATA " + std::to_string(N) + "\n";
    buf += "VECTORS velocity double\n";
    for (std::int64_t i = 0; i < N; ++i) {
        buf += detail::format_double(field.at(0, i)) + " " +
               detail::format_double(field.at(1, i)) + " " +
               detail::format_double(field.at(2, i)) + "\n";
    }
    for (const auto& [name, f] : scalars) {
        buf += "SCALARS " + name + " double 1\n";
        buf += "LOOKUP_TABLE default\n";
        for (std::int64_t i = 0; i < N; ++i)
            buf += detail::format_double(f.data()[i]) + "\n";
    }
    detail::write_file_atomic(path, buf);
}

// ---------------------------------------------------------------------------
// Run configuration: flat key = value text, unknown keys rejected
// ---------------------------------------------------------------------------

struct RunConfig {
    SolverConfig solver;
    DiagOptions diag;
    Int3 n{32, 32, 32};
    Vec3 l{two_pi, two_pi, two_pi};
    std::string initial = "u2";        // u1 | u2 | three_wave | beltrami | random | file
    std::string initial_file;          // when initial = file
    Int3 initial_k{1, 0, 0};           // beltrami
    std::string initial_sign = "+";    // + | - | mixed
    double initial_amplitude = 1.0;
    double initial_phase = 0.0;
    std::uint64_t seed = 1;
    std::vector<double> gauge_lambdas{0.0, 1.0};
    std::string output_dir = ".";

    Lattice lattice() const { return Lattice(n, l); }

    /// Materialize the configured initial condition.
    PhysicalVectorField make_initial() const {
        const Lattice lat = lattice();
        if (initial == "u1") return paper_field(lat, PaperField::u1);
        if (initial == "u2") return paper_field(lat, PaperField::u2);
        if (initial == "three_wave") return paper_field(lat, PaperField::three_wave);
        if (initial == "beltrami") {
            const int sgn = initial_sign == "-" ? -1 : +1;
            return beltrami_wave(
                lat, BeltramiWaveSpec{initial_k, initial_phase, sgn, initial_amplitude});
        }
        if (initial == "random") {
            SpinSign s = SpinSign::mixed;
            if (initial_sign == "+") s = SpinSign::positive;
            if (initial_sign == "-") s = SpinSign::negative;
            return random_spin_field(lat, seed, s);
        }
        if (initial == "file") {
            FieldFile f = read_field(initial_file);
            if (f.lattice() != lat)
                throw std::invalid_argument("initial file lattice differs from config");
            if (auto* p = std::get_if<PhysicalVectorField>(&f.field)) return *p;
            return inverse_transform(std::get<SpectralVectorField>(f.field));
        }
        throw std::invalid_argument("unknown initial generator: " + initial);
    }
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

inline Int3 parse_int3(const std::string& s) {
    const auto parts = split_list(s);
    if (parts.size() != 3) throw std::invalid_argument("expected three integers: " + s);
    return {std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])};
}

inline Vec3 parse_vec3(const std::string& s) {
    const auto parts = split_list(s);
    if (parts.size() != 3) throw std::invalid_argument("expected three reals: " + s);
    return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
}

inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& p : split_list(s)) out.push_back(std::stod(p));
    return out;
}

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const std::string& p : split_list(s)) out.push_back(std::stoi(p));
    return out;
}

inline bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw std::invalid_argument("expected a boolean, got: " + s);
}

}  // namespace detail

inline RunConfig parse_run_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        auto trim = [](std::string s) {
            const auto x = s.find_first_not_of(" \t\r\n");
            if (x == std::string::npos) return std::string();
            const auto y = s.find_last_not_of(" \t\r\n");
            return s.substr(x, y - x + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "nu") cfg.solver.nu = std::stod(value);
        else if (key == "dt") cfg.solver.dt = std::stod(value);
        else if (key == "t_end") cfg.solver.t_end = std::stod(value);
        else if (key == "dealias") cfg.solver.dealias = detail::parse_bool(value);
        else if (key == "diag_stride") cfg.solver.diag_stride = std::stoi(value);
        else if (key == "checkpoint_stride") cfg.solver.checkpoint_stride = std::stoi(value);
        else if (key == "blowup_factor") cfg.solver.blowup_factor = std::stod(value);
        else if (key == "n") cfg.n = detail::parse_int3(value);
        else if (key == "l") cfg.l = detail::parse_vec3(value);
        else if (key == "initial") cfg.initial = value;
        else if (key == "initial_file") cfg.initial_file = value;
        else if (key == "initial_k") cfg.initial_k = detail::parse_int3(value);
        else if (key == "initial_sign") cfg.initial_sign = value;
        else if (key == "initial_amplitude") cfg.initial_amplitude = std::stod(value);
        else if (key == "initial_phase") cfg.initial_phase = std::stod(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "theta_list")
            cfg.diag.theta_list = value.empty() ? std::vector<double>{}
                                                : detail::parse_double_list(value);
        else if (key == "n_list")
            cfg.diag.n_list = value.empty() ? std::vector<int>{}
                                            : detail::parse_int_list(value);
        else if (key == "gauge_lambdas")
            cfg.gauge_lambdas = value.empty() ? std::vector<double>{}
                                              : detail::parse_double_list(value);
        else if (key == "c0") cfg.diag.c0 = std::stod(value);
        else if (key == "output_dir") cfg.output_dir = value;
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    // One documented environment override for batch runs.
    if (const char* env = std::getenv("SPINFLOW_OUTPUT_DIR")) cfg.output_dir = env;
    return cfg;
}

inline RunConfig parse_run_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path.string());
    return parse_run_config(in);
}

}  // namespace spinflow
