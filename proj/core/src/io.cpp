#include "gfcpd/io.hpp"

#include <charconv>
#include <vector>

namespace gfcpd {

namespace {

struct Tokens {
  std::vector<std::string_view> toks;
  std::size_t pos = 0;

  explicit Tokens(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i) toks.push_back(text.substr(i, j - i));
      i = j;
    }
  }

  std::string_view next(const char* what) {
    if (pos >= toks.size())
      throw FormatError(std::string("unexpected end of input, expected ") + what);
    return toks[pos++];
  }

  std::uint64_t next_u64(const char* what) {
    const std::string_view s = next(what);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw FormatError(std::string("expected an integer for ") + what);
    return v;
  }

  void expect_done() {
    if (pos != toks.size()) throw FormatError("trailing data after the expected values");
  }
};

felt next_code(Tokens& tk, const Field& f) {
  const std::uint64_t v = tk.next_u64("element code");
  if (v >= f.q()) throw FormatError("element code out of range for the field");
  return felt(v);
}

int next_dim(Tokens& tk, const char* what) {
  const std::uint64_t v = tk.next_u64(what);
  if (v > 1u << 20) throw FormatError(std::string(what) + std::string(" is implausibly large"));
  return int(v);
}

Matrix parse_matrix_body(Tokens& tk, const Field& f) {
  const int rows = next_dim(tk, "matrix rows");
  const int cols = next_dim(tk, "matrix cols");
  Matrix m(rows, cols);
  for (auto& x : m.a) x = next_code(tk, f);
  return m;
}

void render_matrix_body(std::string& out, const Matrix& m) {
  out += std::to_string(m.rows) + " " + std::to_string(m.cols) + "\n";
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (j) out += ' ';
      out += std::to_string(m.at(i, j));
    }
    out += '\n';
  }
}

}  // namespace

Matrix parse_matrix_text(const Field& f, std::string_view text) {
  Tokens tk(text);
  Matrix m = parse_matrix_body(tk, f);
  tk.expect_done();
  return m;
}

std::string render_matrix_text(const Matrix& m) {
  std::string out;
  render_matrix_body(out, m);
  return out;
}

TensorFile parse_tensor(std::string_view text, const std::vector<felt>* modulus) {
  Tokens tk(text);
  Field f = Field::parse(tk.next("field"), modulus);
  TensorFile out{f, {}};
  const int n0 = next_dim(tk, "n0");
  const int n1 = next_dim(tk, "n1");
  const int n2 = next_dim(tk, "n2");
  out.tensor = Tensor3(n0, n1, n2);
  for (auto& x : out.tensor.a) x = next_code(tk, f);
  tk.expect_done();
  return out;
}

std::string render_tensor(const Field& f, const Tensor3& t) {
  std::string out = f.name() + "\n";
  out += std::to_string(t.n0) + " " + std::to_string(t.n1) + " " +
         std::to_string(t.n2) + "\n";
  for (int i = 0; i < t.n0; ++i)
    for (int j = 0; j < t.n1; ++j) {
      for (int k = 0; k < t.n2; ++k) {
        if (k) out += ' ';
        out += std::to_string(t.at(i, j, k));
      }
      if (t.n2) out += '\n';
    }
  return out;
}

CpdFile parse_cpd(std::string_view text, const std::vector<felt>* modulus) {
  Tokens tk(text);
  Field f = Field::parse(tk.next("field"), modulus);
  CpdFile out{f, {}, {}};
  const int r = next_dim(tk, "rank");
  for (int d = 0; d < 3; ++d) out.shape[d] = next_dim(tk, "shape");
  out.cpd.a = parse_matrix_body(tk, f);
  out.cpd.b = parse_matrix_body(tk, f);
  out.cpd.c = parse_matrix_body(tk, f);
  tk.expect_done();
  const Matrix* ms[3] = {&out.cpd.a, &out.cpd.b, &out.cpd.c};
  for (int d = 0; d < 3; ++d) {
    if (ms[d]->rows != r) throw FormatError("factor row count disagrees with the header");
    if (ms[d]->cols != out.shape[d])
      throw FormatError("factor width disagrees with the header shape");
  }
  return out;
}

std::string render_cpd(const Field& f, const Cpd& cpd, int n0, int n1, int n2) {
  std::string out = f.name() + "\n";
  out += std::to_string(cpd.rank()) + " " + std::to_string(n0) + " " +
         std::to_string(n1) + " " + std::to_string(n2) + "\n";
  render_matrix_body(out, cpd.a);
  render_matrix_body(out, cpd.b);
  render_matrix_body(out, cpd.c);
  return out;
}

}  // namespace gfcpd
