#include "fixtures.hpp"

#include <stdexcept>

#include "kform/parser.hpp"

namespace kform::testing {

namespace {

struct FieldFactor {
  bool tilde = false;
  std::size_t field = 0;
  MultiIndex deriv;
};

bool read_field(const std::string& f, const Naming& naming, FieldFactor& out) {
  std::vector<std::string> names = naming.fields.empty() ? std::vector<std::string>{"q"} : naming.fields;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    if (f.compare(0, name.size(), name) != 0) continue;
    std::string rest = f.substr(name.size());
    bool tilde = false;
    if (!rest.empty() && rest[0] == '~') {
      tilde = true;
      rest.erase(0, 1);
    } else if (naming.fields.empty() && !rest.empty() && rest[0] == 't') {
      tilde = true;
      rest.erase(0, 1);
    }
    std::vector<int> d(naming.axes.size(), 0);
    if (!rest.empty()) {
      if (rest[0] != '_') continue;
      for (char c : rest.substr(1)) {
        bool found = false;
        for (std::size_t k = 0; k < naming.axes.size(); ++k) {
          if (naming.axes[k] == std::string(1, c)) {
            ++d[k];
            found = true;
          }
        }
        if (!found) return false;
      }
    }
    out = {tilde, i, MultiIndex(d)};
    return true;
  }
  return false;
}

}  // namespace

BilinearExpr parse_bilinear(const std::string& text, const Naming& naming) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  BilinearExpr out(naming.axes.size());
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t end = s.find_first_of("+-", i);
    std::string term = s.substr(i, end == std::string::npos ? std::string::npos : end - i);
    i = end == std::string::npos ? s.size() : end;
    Coeff c(sign);
    std::optional<FieldFactor> q, qt;
    std::size_t pos = 0;
    while (pos <= term.size()) {
      std::size_t star = term.find('*', pos);
      std::string f = term.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
      pos = star == std::string::npos ? term.size() + 1 : star + 1;
      FieldFactor ff;
      if (read_field(f, naming, ff)) {
        (ff.tilde ? qt : q) = ff;
      } else {
        c *= parse_poly(f);
      }
    }
    if (!q || !qt) throw std::invalid_argument("fixture term without both fields: " + term);
    out.add({q->field, qt->field, q->deriv, qt->deriv}, c);
  }
  return out;
}

std::vector<BilinearExpr> example1_fluxes() {
  Naming n{{"x", "t"}, {}};
  // d_t(qt q_t - q qt_t) - d_x(qt q_x - q qt_x)
  return {-parse_bilinear("qt*q_x - q*qt_x", n), parse_bilinear("qt*q_t - q*qt_t", n)};
}

std::vector<BilinearExpr> example2_fluxes() {
  Naming n{{"x", "y", "z"}, {}};
  return {parse_bilinear("qt*q_xyyzz - q*qt_xyyzz + qt*q_xyy - q*qt_xyy", n),
          -parse_bilinear("qt_x*q_xyzz - q_x*qt_xyzz + qt_x*q_xy - q_x*qt_xy", n),
          parse_bilinear("qt_xy*q_xyz - q_xy*qt_xyz + qt*q_z - q*qt_z", n)};
}

std::vector<BilinearExpr> stokes_fluxes(bool with_slips) {
  Naming n{{"t", "x", "y", "z"}, {"u1", "u2", "u3", "p"}};
  auto j = [&](char a, const std::string& f, const std::string& last) {
    std::string d(1, a);
    return parse_bilinear("u" + f + "~*p + u" + f + "*p~ + nu*u1*u1~_" + d + " - nu*u1~*u1_" + d + " + nu*u2*u2~_" + d +
                              " - nu*u2~*u2_" + d + " + nu*u3*u3~_" + d + " - nu*u3~*u3_" + last,
                          n);
  };
  return {parse_bilinear("u1~*u1 + u2~*u2 + u3~*u3", n), j('x', "1", "x"), j('y', "2", "y"),
          j('z', "3", with_slips ? "x" : "z")};
}

std::vector<TraceSum> biharmonic_reference(bool with_slips) {
  Naming n{{"x", "y", "z"}, {}};
  const std::string x_slip = with_slips ? "i*s_x*s_y^2*q" : "2*i*s_x*s_y^2*q";
  const std::string y_slip = with_slips ? "2*i*s_x*s_z^2*q" : "2*i*s_y*s_z^2*q";
  return {
      parse_trace_sum("q_xxx + i*s_x^3*q - i*s_x*q_xx - s_x^2*q_x + 2*q_xyy + " + x_slip + " + 2*q_xzz + 2*i*s_x*s_z^2*q", n),
      parse_trace_sum("q_yyy + i*s_y^3*q - i*s_y*q_yy - s_y^2*q_y - 2*i*s_x*q_xy - 2*s_x*s_y*q_x + 2*q_yzz + " + y_slip, n),
      parse_trace_sum("q_zzz + i*s_z^3*q - i*s_z*q_zz - s_z^2*q_z - 2*i*s_x*q_xz - 2*s_x*s_z*q_x - 2*i*s_y*q_yz - "
                      "2*s_y*s_z*q_y",
                      n)};
}

std::vector<RelationTerm> wave_relation(bool plus) {
  const Poly ik = parse_poly("i*k");
  const Poly q_coeff_t = plus ? -ik : ik;
  const Poly weight_t = parse_poly(plus ? "i*k*T" : "-i*k*T");
  const MultiIndex none{0, 0}, dx{1, 0}, dt{0, 1};
  auto term = [](std::size_t axis, FaceEnd end, const Poly& c, const Poly& w, const MultiIndex& d) {
    return RelationTerm{axis, end, end == FaceEnd::Hi ? 1 : -1, c, w, Trace{0, d}};
  };
  // Face x = l carries e^{ikl} h_1 (plus the q(l,t) term removed by the Dirichlet data),
  // x = 0 carries h_2, t = 0 the initial data and t = T the unknown transform.
  return {term(0, FaceEnd::Lo, ik, Poly(), none),       term(0, FaceEnd::Lo, Poly(-1), Poly(), dx),
          term(0, FaceEnd::Hi, ik, parse_poly("i*k*l"), none), term(0, FaceEnd::Hi, Poly(-1), parse_poly("i*k*l"), dx),
          term(1, FaceEnd::Lo, q_coeff_t, Poly(), none), term(1, FaceEnd::Lo, Poly(1), Poly(), dt),
          term(1, FaceEnd::Hi, q_coeff_t, weight_t, none), term(1, FaceEnd::Hi, Poly(1), weight_t, dt)};
}

}  // namespace kform::testing
