#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "format.hpp"
#include "minsurf/surface.hpp"

namespace minsurf {

namespace {

const char* const kPlyNames[] = {"x", "y", "z", "w", "x4", "x5"};

std::vector<std::size_t> output_axes(const SurfacePatch& p, MeshFormat format,
                                     const Projection& projection) {
    if (projection) {
        for (std::size_t a : *projection) {
            if (a >= p.dimension) {
                throw Error(ErrorKind::InvalidArgument,
                            "projection axis " + std::to_string(a) + " out of range");
            }
        }
        return {(*projection)[0], (*projection)[1], (*projection)[2]};
    }
    std::vector<std::size_t> axes;
    const std::size_t count = format == MeshFormat::OBJ ? std::min<std::size_t>(3, p.dimension)
                                                        : p.dimension;
    for (std::size_t i = 0; i < count; ++i) axes.push_back(i);
    return axes;
}

struct Triangulation {
    std::vector<std::size_t> vertices; // grid indices of emitted vertices
    std::vector<std::array<std::uint32_t, 3>> faces;
};

Triangulation triangulate(const SurfacePatch& p) {
    Triangulation t;
    std::vector<std::uint32_t> remap(p.nu * p.nv, 0);
    for (std::size_t j = 0; j < p.nu; ++j) {
        for (std::size_t k = 0; k < p.nv; ++k) {
            if (!p.is_valid(j, k)) continue;
            remap[p.index(j, k)] = static_cast<std::uint32_t>(t.vertices.size());
            t.vertices.push_back(p.index(j, k));
        }
    }
    for (std::size_t j = 0; j + 1 < p.nu; ++j) {
        for (std::size_t k = 0; k + 1 < p.nv; ++k) {
            if (!p.is_valid(j, k) || !p.is_valid(j + 1, k) || !p.is_valid(j, k + 1) ||
                !p.is_valid(j + 1, k + 1)) {
                continue;
            }
            const std::uint32_t a = remap[p.index(j, k)];
            const std::uint32_t b = remap[p.index(j + 1, k)];
            const std::uint32_t c = remap[p.index(j, k + 1)];
            const std::uint32_t d = remap[p.index(j + 1, k + 1)];
            t.faces.push_back({a, b, d});
            t.faces.push_back({a, d, c});
        }
    }
    return t;
}

template <typename T>
void put_le(std::string& out, T value) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.append(bytes, sizeof(T));
}

} // namespace

std::string mesh_to_string(const SurfacePatch& p, MeshFormat format, Projection projection) {
    const std::vector<std::size_t> axes = output_axes(p, format, projection);
    const Triangulation t = triangulate(p);
    std::string out;
    if (format == MeshFormat::OBJ) {
        for (std::size_t idx : t.vertices) {
            out += 'v';
            for (std::size_t a : axes) {
                out += ' ';
                out += detail::significant(p.points[idx * p.dimension + a], 9);
            }
            for (std::size_t a = axes.size(); a < 3; ++a) out += " 0";
            out += '\n';
        }
        for (const auto& f : t.faces) {
            out += "f " + std::to_string(f[0] + 1) + ' ' + std::to_string(f[1] + 1) + ' ' +
                   std::to_string(f[2] + 1) + '\n';
        }
        return out;
    }
    std::ostringstream header;
    header << "ply\nformat binary_little_endian 1.0\n"
           << "element vertex " << t.vertices.size() << '\n';
    for (std::size_t i = 0; i < axes.size(); ++i) {
        header << "property double " << (projection ? kPlyNames[i] : kPlyNames[axes[i]]) << '\n';
    }
    header << "element face " << t.faces.size() << '\n'
           << "property list uchar int vertex_indices\nend_header\n";
    out = header.str();
    for (std::size_t idx : t.vertices) {
        for (std::size_t a : axes) put_le(out, p.points[idx * p.dimension + a]);
    }
    for (const auto& f : t.faces) {
        put_le(out, static_cast<std::uint8_t>(3));
        for (std::uint32_t v : f) put_le(out, static_cast<std::int32_t>(v));
    }
    return out;
}

void export_mesh(const SurfacePatch& p, MeshFormat format, const std::string& path,
                 Projection projection) {
    const std::string data = mesh_to_string(p, format, projection);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::IOError, "cannot open '" + path + "' for writing");
    file.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!file) throw Error(ErrorKind::IOError, "failed writing '" + path + "'");
}

std::vector<std::array<double, 3>> read_obj_vertices(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::IOError, "cannot open '" + path + "'");
    std::vector<std::array<double, 3>> out;
    std::string line;
    while (std::getline(file, line)) {
        if (line.size() < 2 || line[0] != 'v' || line[1] != ' ') continue;
        std::istringstream in(line.substr(2));
        std::array<double, 3> v{};
        if (!(in >> v[0] >> v[1] >> v[2])) {
            throw Error(ErrorKind::IOError, "malformed vertex line in '" + path + "'");
        }
        out.push_back(v);
    }
    return out;
}

} // namespace minsurf
