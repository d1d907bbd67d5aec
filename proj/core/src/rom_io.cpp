#include "somor/rom_io.hpp"

#include <fstream>
#include <limits>
#include <utility>

#include "somor/key_value_file.hpp"
#include "somor/matrix_market.hpp"

namespace somor {

namespace {

RomKind kind_from_names(const std::string& scheme, const std::string& prefix) {
  if (scheme == "combined") return RomKind::combined;
  if (scheme == "homogeneous") return RomKind::homogeneous;
  if (prefix == "so") return RomKind::split_so;
  if (prefix == "x0") return RomKind::split_x0;
  return RomKind::split_v0;
}

void write_model(std::ofstream& manifest, const std::filesystem::path& dir,
                 const std::string& prefix, const ReducedModel& rom) {
  auto key = [&](const char* name) { return prefix + "." + name; };
  auto file = [&](const char* name) {
    return prefix + "_" + name + ".mtx";
  };
  manifest << key("r") << " = " << rom.order() << "\n";
  manifest << key("inputs") << " = " << rom.b.cols() << "\n";
  manifest << key("outputs") << " = " << rom.c.rows() << "\n";
  manifest << key("x0_cols") << " = " << rom.x0.cols() << "\n";
  manifest << key("v0_cols") << " = " << rom.v0.cols() << "\n";
  if (rom.retained_sigma.size() > 0) {
    manifest << key("sigma") << " = " << format_vector(rom.retained_sigma)
             << "\n";
  }
  if (rom.order() == 0) return;
  auto emit = [&](const char* name, const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return;
    write_matrix_market(dir / file(name), a);
    manifest << key(name) << " = " << file(name) << "\n";
  };
  emit("M", rom.m);
  emit("D", rom.d);
  emit("K", rom.k);
  emit("B", rom.b);
  emit("C", rom.c);
  emit("X0", rom.x0);
  emit("V0", rom.v0);
}

ReducedModel read_model(const KeyValueFile& kv, const std::string& prefix,
                        RomKind kind) {
  auto key = [&](const char* name) { return prefix + "." + name; };
  const Index r = static_cast<Index>(kv.get_number(key("r")));
  const Index inputs = static_cast<Index>(kv.get_number(key("inputs")));
  const Index outputs = static_cast<Index>(kv.get_number(key("outputs")));
  const Index x0_cols = static_cast<Index>(kv.get_number(key("x0_cols")));
  const Index v0_cols = static_cast<Index>(kv.get_number(key("v0_cols")));

  auto load = [&](const char* name, Index rows, Index cols) {
    if (rows == 0 || cols == 0) return Matrix(rows, cols);
    if (!kv.has(key(name))) {
      throw ParseError(kv.path().string() + ": missing key '" + key(name) +
                       "'");
    }
    Matrix a = read_matrix_market(kv.directory() / kv.get_string(key(name)));
    if (a.rows() != rows || a.cols() != cols) {
      throw DimensionMismatch("rom manifest: " + key(name) +
                              " has unexpected shape");
    }
    return a;
  };

  ReducedModel rom;
  rom.kind = kind;
  rom.m = load("M", r, r);
  rom.d = load("D", r, r);
  rom.k = load("K", r, r);
  rom.b = load("B", r, inputs);
  rom.c = load("C", outputs, r);
  rom.x0 = load("X0", r, x0_cols);
  rom.v0 = load("V0", r, v0_cols);
  rom.retained_sigma =
      kv.has(key("sigma")) ? kv.get_vector(key("sigma")) : Vector(0);
  if (rom.retained_sigma.size() != r) {
    throw ParseError(kv.path().string() + ": " + key("sigma") +
                     " length does not match order");
  }
  rom.proj_w = Matrix(0, 0);
  rom.proj_v = Matrix(0, 0);
  if (r == 0) {
    rom.stable = true;
    rom.spectral_abscissa = -std::numeric_limits<double>::infinity();
  } else {
    Matrix e = Matrix::Zero(2 * r, 2 * r);
    e.topLeftCorner(r, r).setIdentity();
    e.bottomRightCorner(r, r) = rom.m;
    Matrix a = Matrix::Zero(2 * r, 2 * r);
    a.topRightCorner(r, r).setIdentity();
    a.bottomLeftCorner(r, r) = -rom.k;
    a.bottomRightCorner(r, r) = -rom.d;
    rom.spectral_abscissa = pencil_abscissa(e, a);
    rom.stable = rom.spectral_abscissa < 0.0;
  }
  return rom;
}

}  // namespace

RomBundle make_bundle(SplitReduction split) {
  RomBundle bundle;
  bundle.scheme = "split";
  bundle.split = std::move(split);
  return bundle;
}

RomBundle make_bundle(ReducedModel rom, const std::string& scheme) {
  if (scheme != "combined" && scheme != "homogeneous") {
    throw InvalidParameter("make_bundle: scheme must be combined or "
                           "homogeneous for a single model");
  }
  RomBundle bundle;
  bundle.scheme = scheme;
  bundle.single = std::move(rom);
  return bundle;
}

void write_rom_dir(const std::filesystem::path& dir, const RomBundle& bundle) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "rom.manifest");
  if (!manifest) {
    throw ParseError((dir / "rom.manifest").string() +
                     ": cannot open for writing");
  }
  manifest << "scheme = " << bundle.scheme << "\n";
  if (bundle.scheme == "split") {
    if (!bundle.split) throw InvalidParameter("write_rom_dir: missing split");
    write_model(manifest, dir, "so", bundle.split->rom_so);
    write_model(manifest, dir, "x0", bundle.split->rom_x0);
    write_model(manifest, dir, "v0", bundle.split->rom_v0);
  } else {
    if (!bundle.single) throw InvalidParameter("write_rom_dir: missing model");
    write_model(manifest, dir, "rom", *bundle.single);
  }
  if (!manifest) {
    throw ParseError((dir / "rom.manifest").string() + ": write failed");
  }
}

RomBundle read_rom_dir(const std::filesystem::path& dir) {
  const KeyValueFile kv = KeyValueFile::parse(dir / "rom.manifest");
  RomBundle bundle;
  bundle.scheme = kv.get_string("scheme");
  if (bundle.scheme == "split") {
    SplitReduction split;
    split.rom_so = read_model(kv, "so", RomKind::split_so);
    split.rom_x0 = read_model(kv, "x0", RomKind::split_x0);
    split.rom_v0 = read_model(kv, "v0", RomKind::split_v0);
    bundle.split = std::move(split);
  } else if (bundle.scheme == "combined" || bundle.scheme == "homogeneous") {
    bundle.single =
        read_model(kv, "rom", kind_from_names(bundle.scheme, "rom"));
  } else {
    throw ParseError((dir / "rom.manifest").string() + ": unknown scheme '" +
                     bundle.scheme + "'");
  }
  return bundle;
}

}  // namespace somor
