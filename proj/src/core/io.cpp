// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/core/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "modspace/error.hpp"

namespace modspace {
namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

}  // namespace

void write_blob(const std::string& path, json header, std::span<const cplx> payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot open " + path + " for writing");
  header["count"] = payload.size();
  header["encoding"] = "f64le-complex";
  out << header.dump() << '\n';
  std::vector<std::uint64_t> words(2 * payload.size());
  for (std::size_t i = 0; i < payload.size(); ++i) {
    const double re = payload[i].real(), im = payload[i].imag();
    words[2 * i] = to_little(std::bit_cast<std::uint64_t>(re));
    words[2 * i + 1] = to_little(std::bit_cast<std::uint64_t>(im));
  }
  out.write(reinterpret_cast<const char*>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
  if (!out) fail(ErrorKind::io, "write failed for " + path);
}

std::vector<cplx> read_blob(const std::string& path, json& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::io, path + ": missing header line");
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    fail(ErrorKind::io, path + ": malformed header: " + e.what());
  }
  if (!header.contains("count")) fail(ErrorKind::io, path + ": header lacks count");
  const auto count = header["count"].get<std::size_t>();
  std::vector<std::uint64_t> words(2 * count);
  in.read(reinterpret_cast<char*>(words.data()),
          static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
  if (static_cast<std::size_t>(in.gcount()) != words.size() * sizeof(std::uint64_t))
    fail(ErrorKind::io, path + ": truncated payload");
  std::vector<cplx> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = {std::bit_cast<double>(to_little(words[2 * i])),
              std::bit_cast<double>(to_little(words[2 * i + 1]))};
  return out;
}

json grid_to_json(const GridSpec& g) { return {{"n", g.n}, {"m", g.m}, {"N", g.N}, {"L", g.L}}; }

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  try {
    g.n = j.at("n").get<int>();
    g.m = j.at("m").get<int>();
    g.N = j.at("N").get<std::size_t>();
    g.L = j.at("L").get<double>();
  } catch (const json::exception& e) {
    fail(ErrorKind::io, std::string("grid header: ") + e.what());
  }
  g.validate();
  return g;
}

void write_vector_field(const std::string& path, const VectorField& f) {
  json h = grid_to_json(f.grid());
  h["kind"] = "vector-field";
  h["side"] = f.side() == Side::physical ? "physical" : "frequency";
  write_blob(path, h, f.data());
}

VectorField read_vector_field(const std::string& path) {
  json h;
  auto data = read_blob(path, h);
  if (h.value("kind", "") != "vector-field") fail(ErrorKind::io, path + ": not a vector field");
  const GridSpec g = grid_from_json(h);
  const Side side = h.value("side", "physical") == "frequency" ? Side::frequency : Side::physical;
  VectorField f(g, side);
  if (data.size() != f.data().size()) fail(ErrorKind::io, path + ": payload size mismatch");
  std::copy(data.begin(), data.end(), f.data().begin());
  return f;
}

}  // namespace modspace
