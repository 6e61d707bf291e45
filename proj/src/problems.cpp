#include "wgnc/problems.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace wgnc {

// ---------------------------------------------------------------------------
// Polynomial2

Polynomial2 Polynomial2::constant(double c) {
  Polynomial2 p;
  if (c != 0.0) p.terms_[{0, 0}] = c;
  return p;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : s_(text) {}

  Polynomial2 parse(std::map<std::pair<int, int>, double>& terms) {
    skip();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1.0 : 1.0;
    }
    term(sign, terms);
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      term(op == '-' ? -1.0 : 1.0, terms);
    }
    return {};
  }

 private:
  void term(double sign, std::map<std::pair<int, int>, double>& terms) {
    double coeff = sign;
    int a = 0, b = 0;
    factor(coeff, a, b);
    while (true) {
      skip();
      if (peek() != '*') break;
      get();
      factor(coeff, a, b);
    }
    terms[{a, b}] += coeff;
  }

  void factor(double& coeff, int& a, int& b) {
    skip();
    const char c = peek();
    if (c == 'x' || c == 'y') {
      get();
      int power = 1;
      skip();
      if (peek() == '^') {
        get();
        skip();
        const size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        power = std::stoi(s_.substr(start, pos_ - start));
      }
      (c == 'x' ? a : b) += power;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<size_t>(end - begin);
      coeff *= v;
      return;
    }
    fail("unexpected character");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + s_ + "': " + what + " at position " +
                                std::to_string(pos_));
  }

  std::string s_;
  size_t pos_ = 0;
};

}  // namespace

Polynomial2 Polynomial2::parse(const std::string& text) {
  Polynomial2 p;
  PolyParser(text).parse(p.terms_);
  for (auto it = p.terms_.begin(); it != p.terms_.end();) {
    it = it->second == 0.0 ? p.terms_.erase(it) : std::next(it);
  }
  return p;
}

double Polynomial2::operator()(const Point& p) const {
  double s = 0.0;
  for (const auto& [ab, c] : terms_) s += c * std::pow(p.x, ab.first) * std::pow(p.y, ab.second);
  return s;
}

std::string Polynomial2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out << std::setprecision(17);
  bool first = true;
  for (const auto& [ab, c] : terms_) {
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    out << std::abs(c);
    if (ab.first > 0) out << "*x^" << ab.first;
    if (ab.second > 0) out << "*y^" << ab.second;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// ProblemSpec

int wall_index(Wall w) {
  switch (w) {
    case Wall::Left: return 0;
    case Wall::Right: return 1;
    case Wall::Bottom: return 2;
    case Wall::Top: return 3;
    case Wall::None: break;
  }
  throw std::invalid_argument("wall_index: not a boundary wall");
}

Wall wall_from_index(int i) {
  static constexpr Wall walls[4] = {Wall::Left, Wall::Right, Wall::Bottom, Wall::Top};
  return walls[i];
}

const ThermalBC& ProblemSpec::thermal_bc(Wall w) const { return thermal[wall_index(w)]; }

void ProblemSpec::validate() const {
  if (!(pr > 0.0)) throw std::invalid_argument("Pr must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(ra >= 0.0)) throw std::invalid_argument("Ra must be non-negative");
  if (!(domain.width() > 0.0 && domain.height() > 0.0)) throw std::invalid_argument("empty domain");
  if (!(fluid.width() > 0.0 && fluid.height() > 0.0)) throw std::invalid_argument("empty fluid region");
  if (fluid.x0 < domain.x0 || fluid.x1 > domain.x1 || fluid.y0 < domain.y0 || fluid.y1 > domain.y1) {
    throw std::invalid_argument("fluid region not contained in the domain");
  }
  for (int i = 0; i < 4; ++i) {
    if (thermal[i].kind == ThermalBC::Kind::Unset) {
      throw std::invalid_argument(std::string("no temperature condition on the ") +
                                  to_string(wall_from_index(i)) + " wall");
    }
  }
  if (!f || !g) throw std::invalid_argument("forcing not set");
}

double ConsistencyReport::max() const { return std::max({divergence, momentum, energy}); }

namespace {

// a(x) = x^2 (x-1)^2 and its derivatives.
struct Bump {
  static double v(double x) { return x * x * (x - 1) * (x - 1); }
  static double d1(double x) { return 4 * x * x * x - 6 * x * x + 2 * x; }
  static double d2(double x) { return 12 * x * x - 12 * x + 2; }
  static double d3(double x) { return 24 * x - 12; }
};

}  // namespace

ProblemSpec example_6_1() {
  ProblemSpec s;
  s.name = "example_6_1";
  s.builtin = "example_6_1";
  s.pr = 1.0;
  s.ra = 10.0;
  s.kappa = 1.0;
  s.domain = {-1.0, 1.0, 0.0, 1.0};
  s.fluid = {0.0, 1.0, 0.0, 1.0};
  const Rect fluid = s.fluid;

  ExactSolution ex;
  // Stream function psi = -a(x) a(y) / 2, u = (psi_y, -psi_x).
  ex.u = [fluid](const Point& p) -> Point {
    if (!fluid.contains(p, 1e-14)) return {0.0, 0.0};
    return {-0.5 * Bump::v(p.x) * Bump::d1(p.y), 0.5 * Bump::d1(p.x) * Bump::v(p.y)};
  };
  ex.grad_u = [fluid](const Point& p) -> Eigen::Matrix2d {
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    if (!fluid.contains(p, 1e-14)) return g;
    const double a = Bump::v(p.x), a1 = Bump::d1(p.x), a2 = Bump::d2(p.x);
    const double b = Bump::v(p.y), b1 = Bump::d1(p.y), b2 = Bump::d2(p.y);
    g << -0.5 * a1 * b1, -0.5 * a * b2, 0.5 * a2 * b, 0.5 * a1 * b1;
    return g;
  };
  ex.p = [](const Point& p) { return std::pow(p.x, 6) - std::pow(p.y, 6); };
  ex.grad_p = [](const Point& p) -> Point { return {6 * std::pow(p.x, 5), -6 * std::pow(p.y, 5)}; };
  ex.T = [](const Point& p) { return (p.x * p.x - 1.0) * (p.y * p.y - p.y); };
  ex.grad_T = [](const Point& p) -> Point {
    return {2 * p.x * (p.y * p.y - p.y), (p.x * p.x - 1.0) * (2 * p.y - 1.0)};
  };
  ex.stream = [fluid](const Point& p) {
    if (!fluid.contains(p, 1e-14)) return 0.0;
    return -0.5 * Bump::v(p.x) * Bump::v(p.y);
  };

  const double pr = s.pr, ra = s.ra, kappa = s.kappa;
  s.f = [ex, pr, ra, fluid](const Point& p) -> Point {
    if (!fluid.contains(p, 1e-14)) return {0.0, 0.0};
    const double a = Bump::v(p.x), a1 = Bump::d1(p.x), a2 = Bump::d2(p.x), a3 = Bump::d3(p.x);
    const double b = Bump::v(p.y), b1 = Bump::d1(p.y), b2 = Bump::d2(p.y), b3 = Bump::d3(p.y);
    const Point u = ex.u(p);
    const Eigen::Matrix2d g = ex.grad_u(p);
    const double lap1 = -0.5 * (a2 * b1 + a * b3);
    const double lap2 = 0.5 * (a3 * b + a1 * b2);
    const Point gp = ex.grad_p(p);
    const double t = ex.T(p);
    return {-pr * lap1 + u.x * g(0, 0) + u.y * g(0, 1) + gp.x,
            -pr * lap2 + u.x * g(1, 0) + u.y * g(1, 1) + gp.y - pr * ra * t};
  };
  s.g = [ex, kappa](const Point& p) {
    const double lap = 2.0 * (p.y * p.y - p.y) + 2.0 * (p.x * p.x - 1.0);
    return -kappa * lap + dot(ex.u(p), ex.grad_T(p));
  };
  for (auto& bc : s.thermal) bc = {ThermalBC::Kind::Dirichlet, Polynomial2::constant(0.0)};
  s.exact = ex;
  return s;
}

ProblemSpec cavity(double ra) {
  ProblemSpec s;
  s.name = "cavity";
  s.builtin = "cavity";
  s.pr = 0.71;
  s.ra = ra;
  s.kappa = 1.0;
  s.domain = {0.0, 1.0, 0.0, 1.0};
  s.fluid = s.domain;
  s.f = [](const Point&) -> Point { return {0.0, 0.0}; };
  s.g = [](const Point&) { return 0.0; };
  s.thermal[wall_index(Wall::Left)] = {ThermalBC::Kind::Dirichlet, Polynomial2::constant(1.0)};
  s.thermal[wall_index(Wall::Right)] = {ThermalBC::Kind::Dirichlet, Polynomial2::constant(0.0)};
  s.thermal[wall_index(Wall::Bottom)] = {ThermalBC::Kind::Insulated, {}};
  s.thermal[wall_index(Wall::Top)] = {ThermalBC::Kind::Insulated, {}};
  s.validate();
  return s;
}

ConsistencyReport check_exact_solution(const ProblemSpec& spec, int samples, unsigned seed) {
  if (!spec.exact) throw std::invalid_argument("check_exact_solution: problem has no exact solution");
  const ExactSolution& ex = *spec.exact;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  const double h = 1e-4;
  ConsistencyReport r;
  auto lap_u = [&](const Point& p) -> Point {
    const Eigen::Matrix2d gxp = ex.grad_u({p.x + h, p.y}), gxm = ex.grad_u({p.x - h, p.y});
    const Eigen::Matrix2d gyp = ex.grad_u({p.x, p.y + h}), gym = ex.grad_u({p.x, p.y - h});
    return {(gxp(0, 0) - gxm(0, 0) + gyp(0, 1) - gym(0, 1)) / (2 * h),
            (gxp(1, 0) - gxm(1, 0) + gyp(1, 1) - gym(1, 1)) / (2 * h)};
  };
  auto lap_t = [&](const Point& p) {
    return (ex.grad_T({p.x + h, p.y}).x - ex.grad_T({p.x - h, p.y}).x + ex.grad_T({p.x, p.y + h}).y -
            ex.grad_T({p.x, p.y - h}).y) /
           (2 * h);
  };
  for (int i = 0; i < samples; ++i) {
    const Point pf{spec.fluid.x0 + unit(rng) * spec.fluid.width(),
                   spec.fluid.y0 + unit(rng) * spec.fluid.height()};
    const Eigen::Matrix2d g = ex.grad_u(pf);
    r.divergence = std::max(r.divergence, std::abs(g(0, 0) + g(1, 1)));
    const Point u = ex.u(pf), lu = lap_u(pf), gp = ex.grad_p(pf), f = spec.f(pf);
    const double t = ex.T(pf);
    const double rx = f.x - (-spec.pr * lu.x + u.x * g(0, 0) + u.y * g(0, 1) + gp.x -
                             spec.pr * spec.ra * spec.gravity.x * t);
    const double ry = f.y - (-spec.pr * lu.y + u.x * g(1, 0) + u.y * g(1, 1) + gp.y -
                             spec.pr * spec.ra * spec.gravity.y * t);
    r.momentum = std::max({r.momentum, std::abs(rx), std::abs(ry)});

    const Point pd{spec.domain.x0 + unit(rng) * spec.domain.width(),
                   spec.domain.y0 + unit(rng) * spec.domain.height()};
    const double re = spec.g(pd) - (-spec.kappa * lap_t(pd) + dot(ex.u(pd), ex.grad_T(pd)));
    r.energy = std::max(r.energy, std::abs(re));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Config files

namespace {

Rect parse_rect(const std::string& text, const char* key) {
  std::istringstream in(text);
  Rect r;
  if (!(in >> r.x0 >> r.x1 >> r.y0 >> r.y1)) {
    throw std::invalid_argument(std::string("config: ") + key + " must be 'x0 x1 y0 y1', got '" + text + "'");
  }
  return r;
}

std::string rect_text(const Rect& r) {
  std::ostringstream out;
  out << std::setprecision(17) << r.x0 << ' ' << r.x1 << ' ' << r.y0 << ' ' << r.y1;
  return out.str();
}

ThermalBC parse_bc(const std::string& text, const std::string& wall) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  for (auto& c : kind) c = static_cast<char>(std::tolower(c));
  if (kind == "insulated") return {ThermalBC::Kind::Insulated, {}};
  if (kind == "dirichlet") {
    std::string rest;
    std::getline(in, rest);
    if (rest.find_first_not_of(" \t") == std::string::npos) {
      throw std::invalid_argument("config: [bc] " + wall + " dirichlet needs a value");
    }
    return {ThermalBC::Kind::Dirichlet, Polynomial2::parse(rest)};
  }
  throw std::invalid_argument("config: [bc] " + wall + " must be 'dirichlet <poly>' or 'insulated'");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string t = text;
  for (auto& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(t);
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw std::invalid_argument("config: bad number list '" + text + "'");
  return out;
}

void install_polynomial_forcing(ProblemSpec& s) {
  const auto polys = *s.forcing_polynomials;
  s.f = [polys](const Point& p) -> Point { return {polys[0](p), polys[1](p)}; };
  s.g = [polys](const Point& p) { return polys[2](p); };
}

// INI values may be written "quoted"; the parser keeps the quotes verbatim.
void strip_quotes(boost::property_tree::ptree& tree) {
  for (auto& [key, child] : tree) {
    std::string v = child.data();
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') child.put_value(v.substr(1, v.size() - 2));
    strip_quotes(child);
  }
}

}  // namespace

ConfigFile parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  strip_quotes(tree);
  ConfigFile cfg;
  const std::string builtin = tree.get<std::string>("problem.builtin", "");
  const double ra_opt = tree.get<double>("physics.ra", -1.0);
  if (builtin == "example_6_1") {
    cfg.problem = example_6_1();
  } else if (builtin == "cavity") {
    cfg.problem = cavity(ra_opt >= 0.0 ? ra_opt : 1e3);
  } else if (builtin.empty()) {
    ProblemSpec& s = cfg.problem;
    s.name = "custom";
    s.domain = parse_rect(tree.get<std::string>("domain.rect", "0 1 0 1"), "rect");
    s.fluid = parse_rect(tree.get<std::string>("domain.fluid_rect", rect_text(s.domain)), "fluid_rect");
    s.forcing_polynomials = std::array<Polynomial2, 3>{
        Polynomial2::parse(tree.get<std::string>("forcing.f1", "0")),
        Polynomial2::parse(tree.get<std::string>("forcing.f2", "0")),
        Polynomial2::parse(tree.get<std::string>("forcing.g", "0"))};
    install_polynomial_forcing(s);
    const char* names[4] = {"left", "right", "bottom", "top"};
    for (int i = 0; i < 4; ++i) {
      const auto v = tree.get_optional<std::string>(std::string("bc.") + names[i]);
      if (v) s.thermal[i] = parse_bc(*v, names[i]);
    }
  } else {
    throw std::invalid_argument("config: unknown builtin problem '" + builtin + "'");
  }
  ProblemSpec& s = cfg.problem;
  s.name = tree.get<std::string>("problem.name", s.name);
  s.pr = tree.get<double>("physics.pr", s.pr);
  s.kappa = tree.get<double>("physics.kappa", s.kappa);
  if (auto v = tree.get_optional<double>("physics.ra")) s.ra = *v;
  if (!builtin.empty() && (tree.get_child_optional("domain") || tree.get_child_optional("bc") ||
                           tree.get_child_optional("forcing"))) {
    throw std::invalid_argument("config: [domain], [bc] and [forcing] apply to custom problems only");
  }
  // Physics overrides change the manufactured forcing; keep built-ins consistent.
  if (builtin == "example_6_1" && (s.pr != 1.0 || s.ra != 10.0 || s.kappa != 1.0)) {
    throw std::invalid_argument("config: example_6_1 has fixed physics (pr=1, ra=10, kappa=1)");
  }
  s.validate();

  if (auto v = tree.get_optional<int>("method.k")) cfg.k = *v;
  if (auto v = tree.get_optional<std::string>("method.variant")) cfg.variant = parse_variant(*v);
  if (auto v = tree.get_optional<int>("mesh.nx")) cfg.nx = *v;
  if (auto v = tree.get_optional<int>("mesh.ny")) cfg.ny = *v;
  if (auto v = tree.get_optional<double>("solver.tol")) cfg.tol = *v;
  if (auto v = tree.get_optional<int>("solver.max_iter")) cfg.max_iter = *v;
  if (auto v = tree.get_optional<std::string>("solver.ramp")) cfg.ramp = parse_list(*v);
  if (cfg.k && *cfg.k < 1) throw std::invalid_argument("config: [method] k must be >= 1");
  if ((cfg.nx && *cfg.nx < 1) || (cfg.ny && *cfg.ny < 1)) {
    throw std::invalid_argument("config: [mesh] nx, ny must be positive");
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) throw std::invalid_argument("config: [solver] tol must be positive");
  if (cfg.max_iter && *cfg.max_iter < 1) throw std::invalid_argument("config: [solver] max_iter must be >= 1");
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ConfigFile& cfg) {
  const ProblemSpec& s = cfg.problem;
  std::ostringstream out;
  out << std::setprecision(17);
  out << "[problem]\n";
  if (!s.builtin.empty()) out << "builtin = " << s.builtin << "\n";
  out << "name = " << s.name << "\n\n";
  out << "[physics]\npr = " << s.pr << "\nra = " << s.ra << "\nkappa = " << s.kappa << "\n\n";
  if (s.builtin.empty()) {
    out << "[domain]\nrect = " << rect_text(s.domain) << "\nfluid_rect = " << rect_text(s.fluid) << "\n\n";
    out << "[bc]\n";
    const char* names[4] = {"left", "right", "bottom", "top"};
    for (int i = 0; i < 4; ++i) {
      const ThermalBC& bc = s.thermal[i];
      if (bc.kind == ThermalBC::Kind::Unset) continue;
      out << names[i] << " = "
          << (bc.kind == ThermalBC::Kind::Insulated ? std::string("insulated")
                                                    : "dirichlet " + bc.value.to_string())
          << "\n";
    }
    out << "\n";
    if (s.forcing_polynomials) {
      const auto& fp = *s.forcing_polynomials;
      out << "[forcing]\nf1 = " << fp[0].to_string() << "\nf2 = " << fp[1].to_string()
          << "\ng = " << fp[2].to_string() << "\n\n";
    }
  }
  if (cfg.k || cfg.variant) {
    out << "[method]\n";
    if (cfg.k) out << "k = " << *cfg.k << "\n";
    if (cfg.variant) out << "variant = " << (*cfg.variant == Variant::WG1 ? "wg1" : *cfg.variant == Variant::WG2 ? "wg2" : "wg3") << "\n";
    out << "\n";
  }
  if (cfg.nx || cfg.ny) {
    out << "[mesh]\n";
    if (cfg.nx) out << "nx = " << *cfg.nx << "\n";
    if (cfg.ny) out << "ny = " << *cfg.ny << "\n";
    out << "\n";
  }
  if (cfg.tol || cfg.max_iter || !cfg.ramp.empty()) {
    out << "[solver]\n";
    if (cfg.tol) out << "tol = " << *cfg.tol << "\n";
    if (cfg.max_iter) out << "max_iter = " << *cfg.max_iter << "\n";
    if (!cfg.ramp.empty()) {
      out << "ramp =";
      for (double r : cfg.ramp) out << ' ' << r;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace wgnc
