#include "wlab/mesh_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wlab::io {

namespace {

void require_stream(const std::ofstream& os, const std::string& path) {
    if (!os) throw Error("cannot write file: " + path);
}

void put_f32_le(std::string& buf, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap32(bits);
    buf.push_back(static_cast<char>(bits & 0xff));
    buf.push_back(static_cast<char>((bits >> 8) & 0xff));
    buf.push_back(static_cast<char>((bits >> 16) & 0xff));
    buf.push_back(static_cast<char>((bits >> 24) & 0xff));
}

void put_u32_le(std::string& buf, std::uint32_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
    buf.push_back(static_cast<char>((v >> 16) & 0xff));
    buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_obj(const weier::SurfaceMesh& mesh, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    require_stream(os, path);
    std::ostringstream body;
    for (const auto& v : mesh.vertices)
        body << "v " << format_double(v.position.x) << " " << format_double(v.position.y)
             << " " << format_double(v.position.z) << "\n";
    for (const auto& v : mesh.vertices)
        body << "vn " << format_double(v.normal.x) << " " << format_double(v.normal.y)
             << " " << format_double(v.normal.z) << "\n";
    for (int j = 0; j + 1 < mesh.nv; ++j) {
        for (int i = 0; i + 1 < mesh.nu; ++i) {
            const int a = j * mesh.nu + i + 1; // OBJ is 1-based
            const int b = j * mesh.nu + i + 2;
            const int c = (j + 1) * mesh.nu + i + 2;
            const int d = (j + 1) * mesh.nu + i + 1;
            body << "f " << a << "//" << a << " " << b << "//" << b << " " << c << "//"
                 << c << " " << d << "//" << d << "\n";
        }
    }
    os << body.str();
    if (!os) throw Error("short write: " + path);
}

void write_ply(const weier::SurfaceMesh& mesh, const std::string& path) {
    const std::size_t nfaces =
        static_cast<std::size_t>(mesh.nu - 1) * static_cast<std::size_t>(mesh.nv - 1);
    std::ostringstream header;
    header << "ply\nformat binary_little_endian 1.0\n"
           << "element vertex " << mesh.vertex_count() << "\n"
           << "property float x\nproperty float y\nproperty float z\n"
           << "property float nx\nproperty float ny\nproperty float nz\n"
           << "property float gauss_curvature\nproperty float conformal_factor\n"
           << "element face " << nfaces << "\n"
           << "property list uchar uint vertex_indices\n"
           << "end_header\n";
    std::string buf = header.str();
    for (const auto& v : mesh.vertices) {
        put_f32_le(buf, static_cast<float>(v.position.x));
        put_f32_le(buf, static_cast<float>(v.position.y));
        put_f32_le(buf, static_cast<float>(v.position.z));
        put_f32_le(buf, static_cast<float>(v.normal.x));
        put_f32_le(buf, static_cast<float>(v.normal.y));
        put_f32_le(buf, static_cast<float>(v.normal.z));
        put_f32_le(buf, static_cast<float>(v.gauss_k));
        put_f32_le(buf, static_cast<float>(v.lambda));
    }
    for (int j = 0; j + 1 < mesh.nv; ++j) {
        for (int i = 0; i + 1 < mesh.nu; ++i) {
            buf.push_back(4);
            put_u32_le(buf, static_cast<std::uint32_t>(j * mesh.nu + i));
            put_u32_le(buf, static_cast<std::uint32_t>(j * mesh.nu + i + 1));
            put_u32_le(buf, static_cast<std::uint32_t>((j + 1) * mesh.nu + i + 1));
            put_u32_le(buf, static_cast<std::uint32_t>((j + 1) * mesh.nu + i));
        }
    }
    std::ofstream os(path, std::ios::binary);
    require_stream(os, path);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!os) throw Error("short write: " + path);
}

std::string period_report_json(const weier::PeriodReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "wlab.period_report/1";
    j["residual"] = report.residual;
    auto& cycles = j["cycles"];
    cycles = nlohmann::ordered_json::array();
    for (const auto& c : report.cycles) {
        nlohmann::ordered_json jc;
        jc["dh_over_g"] = {c.dh_over_g.real(), c.dh_over_g.imag()};
        jc["g_dh"] = {c.g_dh.real(), c.g_dh.imag()};
        jc["re_dh"] = c.re_dh;
        jc["closure_residual"] = c.closure_residual;
        cycles.push_back(jc);
    }
    auto& res = j["end_residues"];
    res = nlohmann::ordered_json::array();
    for (const auto& r : report.end_residues) res.push_back({r.real(), r.imag()});
    return j.dump(2);
}

std::string end_fit_json(const weier::EndFit& fit) {
    nlohmann::ordered_json j;
    j["schema"] = "wlab.end_fit/1";
    j["log_growth_a"] = fit.a;
    j["offset_b"] = fit.b;
    j["dipole_c1"] = fit.c1;
    j["dipole_c2"] = fit.c2;
    j["rms_residual"] = fit.rms;
    return j.dump(2);
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\r\n") != std::string::npos) {
            out += '"';
            for (char ch : f) {
                out += ch;
                if (ch == '"') out += '"';
            }
            out += '"';
        } else {
            out += f;
        }
    }
    out += "\r\n";
    return out;
}

} // namespace wlab::io
