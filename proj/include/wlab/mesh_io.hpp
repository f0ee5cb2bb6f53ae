#ifndef WLAB_MESH_IO_HPP
#define WLAB_MESH_IO_HPP

#include <string>

#include "wlab/weierstrass.hpp"

namespace wlab::io {

// ASCII OBJ with positions and normals, quad faces.
void write_obj(const weier::SurfaceMesh& mesh, const std::string& path);

// Binary little-endian PLY; per-vertex float32 position, normal, gauss
// curvature and conformal factor, quad faces.
void write_ply(const weier::SurfaceMesh& mesh, const std::string& path);

std::string period_report_json(const weier::PeriodReport& report);
std::string end_fit_json(const weier::EndFit& fit);

// RFC 4180 row assembly: quotes fields that need quoting, CRLF line ends.
std::string csv_row(const std::vector<std::string>& fields);
std::string format_double(double v); // shortest round-trip-stable form

} // namespace wlab::io

#endif
