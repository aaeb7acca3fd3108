// Copyright 2026 The cvgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvgauss/matrix_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace cvgauss {

namespace {

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens_.push_back(w);
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  const std::string& word() {
    if (done()) throw FileFormatError("unexpected end of file");
    return tokens_[pos_++];
  }

  void expect(const std::string& keyword) {
    const std::string& w = word();
    if (w != keyword) throw FileFormatError("expected '" + keyword + "', found '" + w + "'");
  }

  double number() {
    const std::string& w = word();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w.size() || !std::isfinite(v)) throw FileFormatError("not a finite number: '" + w + "'");
    return v;
  }

  std::size_t count() {
    const double v = number();
    if (v < 1 || v != std::floor(v)) throw FileFormatError("expected a positive integer");
    return static_cast<std::size_t>(v);
  }

  bool peek(const std::string& keyword) const { return !done() && tokens_[pos_] == keyword; }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

void write_row(std::ostream& out, const Vec& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) out << (i ? " " : "") << format_number(row(i), 17);
  out << '\n';
}

void write_body(std::ostream& out, const GaussianState& s) {
  out << "mean ";
  write_row(out, s.mean());
  for (Eigen::Index i = 0; i < s.cov().rows(); ++i) write_row(out, s.cov().row(i).transpose());
}

Mat read_cov(Tokens& t, std::size_t n) {
  Mat cov(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    for (std::size_t j = 0; j < 2 * n; ++j) cov(i, j) = t.number();
  }
  return cov;
}

Vec read_vec(Tokens& t, std::size_t len) {
  Vec v(len);
  for (std::size_t i = 0; i < len; ++i) v(i) = t.number();
  return v;
}

GaussianState make_state(Vec mean, Mat cov) {
  try {
    return GaussianState(std::move(mean), std::move(cov));
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(std::string("invalid state: ") + e.what());
  }
}

}  // namespace

std::string format_number(double value, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

void write_state(std::ostream& out, const GaussianState& state) {
  out << "cov " << state.n_modes() << '\n';
  for (Eigen::Index i = 0; i < state.cov().rows(); ++i) write_row(out, state.cov().row(i).transpose());
  out << "mean ";
  write_row(out, state.mean());
}

void write_mixture(std::ostream& out, const GaussianMixture& m) {
  out << "mixture " << m.size() << ' ' << m.n_modes() << '\n';
  for (const Branch& b : m.branches()) {
    out << "weight " << format_number(b.weight, 17) << '\n';
    write_body(out, b.state);
  }
}

std::variant<GaussianState, GaussianMixture> read_state_file(std::istream& in) {
  Tokens t(in);
  const std::string kind = t.word();
  if (kind == "cov") {
    const std::size_t n = t.count();
    Mat cov = read_cov(t, n);
    Vec mean = Vec::Zero(static_cast<Eigen::Index>(2 * n));
    if (t.peek("mean")) {
      t.word();
      mean = read_vec(t, 2 * n);
    }
    if (!t.done()) throw FileFormatError("trailing data after matrix");
    return make_state(std::move(mean), std::move(cov));
  }
  if (kind == "mixture") {
    const std::size_t k = t.count();
    const std::size_t n = t.count();
    std::vector<Branch> branches;
    double total = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      t.expect("weight");
      const double w = t.number();
      if (w < 0.0) throw FileFormatError("negative branch weight");
      t.expect("mean");
      Vec mean = read_vec(t, 2 * n);
      Mat cov = read_cov(t, n);
      branches.push_back({w, make_state(std::move(mean), std::move(cov))});
      total += w;
    }
    if (!t.done()) throw FileFormatError("trailing data after mixture");
    if (total > 1.0 + 1e-9) throw FileFormatError("branch weights sum above 1");
    const Norm norm = std::abs(total - 1.0) <= 1e-9 ? Norm::kNormalized : Norm::kSubnormalized;
    try {
      return GaussianMixture(std::move(branches), norm);
    } catch (const std::exception& e) {
      throw FileFormatError(std::string("invalid mixture: ") + e.what());
    }
  }
  throw FileFormatError("unknown file kind '" + kind + "' (expected 'cov' or 'mixture')");
}

std::variant<GaussianState, GaussianMixture> read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open '" + path + "'");
  return read_state_file(in);
}

}  // namespace cvgauss
