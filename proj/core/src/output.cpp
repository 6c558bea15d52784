#include "foamlb/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace foamlb {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open for writing", path.string());
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError("write failed", path.string());
}

void put(std::string& line, double v) {
  char buf[32];
  const int k = std::snprintf(buf, sizeof buf, "%.17g", v);
  line.append(buf, static_cast<std::size_t>(k));
}

double to_double(std::string_view s, const std::filesystem::path& path) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw IoError("malformed number '" + std::string(s) + "'", path.string());
  return v;
}

}  // namespace

void write_csv(const FieldSnapshot& snap, const std::filesystem::path& path) {
  snap.validate();
  auto out = open_out(path);
  out << "x,y,rho_melt,rho_gas,p,u_x,u_y,bubble_id\n";
  std::string line;
  for (std::size_t c = 0; c < snap.shape.cells(); ++c) {
    line.clear();
    line += std::to_string(snap.shape.x_of(c));
    line += ',';
    line += std::to_string(snap.shape.y_of(c));
    for (double v : {snap.rho_melt[c], snap.rho_gas[c], snap.pressure[c], snap.ux[c], snap.uy[c]}) {
      line += ',';
      put(line, v);
    }
    line += ',';
    line += std::to_string(snap.bubble_id[c]);
    line += '\n';
    out << line;
  }
  close_checked(out, path);

  std::filesystem::path meta = path;
  meta += ".meta";
  auto m = open_out(meta);
  std::string text = "step = " + std::to_string(snap.step) + "\ntime = ";
  put(text, snap.time);
  text += "\ndx = ";
  put(text, snap.dx);
  text += "\nboundary = " + to_string(snap.boundary) + "\n";
  m << text;
  close_checked(m, meta);
}

FieldSnapshot read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open snapshot", path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,rho_melt", 0) != 0) throw IoError("missing CSV header", path.string());

  struct Row {
    int x, y;
    double v[5];
    int id;
  };
  std::vector<Row> rows;
  int nx = 0, ny = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string_view rest(line);
    std::string_view parts[8];
    for (int k = 0; k < 8; ++k) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (k == 7)) throw IoError("expected 8 columns", path.string());
      parts[k] = rest.substr(0, comma);
      if (k < 7) rest = rest.substr(comma + 1);
    }
    Row r{};
    r.x = static_cast<int>(to_double(parts[0], path));
    r.y = static_cast<int>(to_double(parts[1], path));
    for (int k = 0; k < 5; ++k) r.v[k] = to_double(parts[2 + k], path);
    r.id = static_cast<int>(to_double(parts[7], path));
    if (r.x < 0 || r.y < 0) throw IoError("negative cell coordinate", path.string());
    nx = std::max(nx, r.x + 1);
    ny = std::max(ny, r.y + 1);
    rows.push_back(r);
  }
  FieldSnapshot s;
  s.shape = {nx, ny};
  if (rows.size() != s.shape.cells()) throw IoError("CSV does not cover a full grid", path.string());
  const std::size_t n = s.shape.cells();
  s.rho_melt.resize(n);
  s.rho_gas.resize(n);
  s.pressure.resize(n);
  s.ux.resize(n);
  s.uy.resize(n);
  s.bubble_id.assign(n, -1);
  for (const Row& r : rows) {
    const std::size_t c = s.shape.index(r.x, r.y);
    s.rho_melt[c] = r.v[0];
    s.rho_gas[c] = r.v[1];
    s.pressure[c] = r.v[2];
    s.ux[c] = r.v[3];
    s.uy[c] = r.v[4];
    s.bubble_id[c] = r.id;
  }

  std::filesystem::path meta = path;
  meta += ".meta";
  if (std::ifstream m(meta); m) {
    std::map<std::string, std::string> kv;
    while (std::getline(m, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key = line.substr(0, eq);
      auto val = line.substr(eq + 1);
      key.erase(key.find_last_not_of(' ') + 1);
      val.erase(0, val.find_first_not_of(' '));
      kv[key] = val;
    }
    if (kv.count("step")) s.step = static_cast<long>(to_double(kv["step"], meta));
    if (kv.count("time")) s.time = to_double(kv["time"], meta);
    if (kv.count("dx")) s.dx = to_double(kv["dx"], meta);
    if (kv.count("boundary")) s.boundary = kv["boundary"] == "periodic" ? BoundaryKind::periodic : BoundaryKind::mirror;
  }
  return s;
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  auto out = open_out(path, true);
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  close_checked(out, path);
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image", path.string());
  std::string magic;
  int maxval = 0;
  GrayImage img;
  in >> magic >> img.width >> img.height >> maxval;
  if (magic != "P5" || maxval != 255 || img.width <= 0 || img.height <= 0) throw IoError("unsupported PGM", path.string());
  in.get();
  img.pixels.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height));
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!in) throw IoError("truncated PGM", path.string());
  return img;
}

void write_vtk(const FieldSnapshot& snap, const std::filesystem::path& path) {
  snap.validate();
  auto out = open_out(path);
  const std::size_t n = snap.shape.cells();
  std::string text;
  text += "# vtk DataFile Version 3.0\nfoamlb step " + std::to_string(snap.step) + "\nASCII\nDATASET STRUCTURED_POINTS\n";
  text += "DIMENSIONS " + std::to_string(snap.shape.nx) + " " + std::to_string(snap.shape.ny) + " 1\n";
  text += "ORIGIN 0 0 0\nSPACING ";
  put(text, snap.dx);
  text += ' ';
  put(text, snap.dx);
  text += " 1\nPOINT_DATA " + std::to_string(n) + "\n";
  auto scalars = [&](const char* name, const std::vector<double>& v) {
    text += std::string("SCALARS ") + name + " double 1\nLOOKUP_TABLE default\n";
    for (double x : v) {
      put(text, x);
      text += '\n';
    }
  };
  scalars("rho_melt", snap.rho_melt);
  scalars("rho_gas", snap.rho_gas);
  scalars("pressure", snap.pressure);
  text += "SCALARS bubble_id int 1\nLOOKUP_TABLE default\n";
  for (int id : snap.bubble_id) text += std::to_string(id) + '\n';
  text += "VECTORS velocity double\n";
  for (std::size_t c = 0; c < n; ++c) {
    put(text, snap.ux[c]);
    text += ' ';
    put(text, snap.uy[c]);
    text += " 0\n";
  }
  out << text;
  close_checked(out, path);
}

std::vector<std::filesystem::path> write_outputs(const FieldSnapshot& snap, const OutputFormats& formats,
                                                 const std::filesystem::path& dir, const std::string& stem) {
  std::vector<std::filesystem::path> written;
  if (formats.csv) {
    written.push_back(dir / (stem + ".csv"));
    write_csv(snap, written.back());
  }
  if (formats.pgm) {
    written.push_back(dir / (stem + ".pgm"));
    write_pgm(density_image(snap), written.back());
  }
  if (formats.vtk) {
    written.push_back(dir / (stem + ".vtk"));
    write_vtk(snap, written.back());
  }
  return written;
}

}  // namespace foamlb
