#pragma once

// Loop and path serialization.  The on-disk schema is stable:
//   { "group": "su2", "kind": "loop"|"path", "N": <grid size>,
//     "plateau": <width, paths only>,
//     "samples": [ ... flat row-major complex entries, re/im interleaved ] }
// A loop stores N samples, a path N+1; each sample contributes dim*dim
// (re, im) pairs in row-major order.

#include <fstream>

#include <json.hpp>

#include "loopforms/loops.hpp"

namespace loopforms {

using Json = nlohmann::json;

inline std::string group_name(int dim) {
  return "su" + std::to_string(dim);
}

inline int group_dim_from_name(const std::string& name) {
  if (name.rfind("su", 0) != 0) throw Error("unknown group: " + name);
  return std::stoi(name.substr(2));
}

namespace detail {

inline Json samples_to_json(const std::vector<CMat>& samples) {
  Json flat = Json::array();
  for (const CMat& m : samples) {
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        flat.push_back(m(r, c).real());
        flat.push_back(m(r, c).imag());
      }
    }
  }
  return flat;
}

inline std::vector<CMat> samples_from_json(const Json& flat, int count, int dim) {
  if (static_cast<int>(flat.size()) != count * dim * dim * 2)
    throw Error("sample payload does not match grid metadata");
  std::vector<CMat> samples(count, CMat::Zero(dim, dim));
  std::size_t k = 0;
  for (int j = 0; j < count; ++j)
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        double re = flat[k++], im = flat[k++];
        samples[j](r, c) = Complex(re, im);
      }
  return samples;
}

}  // namespace detail

inline Json loop_to_json(const DiscreteLoop& loop) {
  Json j;
  j["group"] = group_name(loop.dim());
  j["kind"] = "loop";
  j["N"] = loop.samples();
  j["samples"] = detail::samples_to_json(loop.points());
  return j;
}

inline DiscreteLoop loop_from_json(const Json& j,
                                   DerivScheme scheme = DerivScheme::Spectral) {
  int dim = group_dim_from_name(j.at("group").get<std::string>());
  int n = j.at("N").get<int>();
  return DiscreteLoop(detail::samples_from_json(j.at("samples"), n, dim), scheme);
}

inline Json path_to_json(const DiscretePath& path) {
  Json j;
  j["group"] = group_name(static_cast<int>(path.u[0].rows()));
  j["kind"] = "path";
  j["N"] = path.panels();
  j["plateau"] = path.plateau;
  j["samples"] = detail::samples_to_json(path.u);
  return j;
}

inline DiscretePath path_from_json(const Json& j) {
  int dim = group_dim_from_name(j.at("group").get<std::string>());
  int n = j.at("N").get<int>();
  return DiscretePath(detail::samples_from_json(j.at("samples"), n + 1, dim),
                      j.at("plateau").get<int>());
}

inline Json generator_to_json(const FourierGenerator& gen) {
  Json j;
  j["modes"] = gen.cos_coeff.size();
  j["cos"] = detail::samples_to_json(gen.cos_coeff);
  j["sin"] = detail::samples_to_json(gen.sin_coeff);
  return j;
}

inline FourierGenerator generator_from_json(const Json& j, int dim) {
  FourierGenerator gen;
  int modes = j.at("modes").get<int>();
  gen.cos_coeff = detail::samples_from_json(j.at("cos"), modes, dim);
  gen.sin_coeff = detail::samples_from_json(j.at("sin"), modes, dim);
  return gen;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace loopforms
