#include "invt/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "invt/csp.hpp"
#include "invt/groth.hpp"

namespace invt {

namespace {

namespace fs = std::filesystem;

struct DataMissing {
  std::string message;
};

[[noreturn]] void bad(const std::string& where, const std::string& what) { fail(ErrorCode::Parse, where + ": " + what); }

const Json& need(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  if (!obj.contains(key)) fail(ErrorCode::Precondition, where + ": missing block \"" + key + "\"");
  return obj.at(key);
}

std::string text_of(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

int int_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::vector<int> ints_of(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    auto pos = what.find(": ", what.find("parse error"));
    fail(ErrorCode::Parse, source + ": line " + std::to_string(line) + ", column " + std::to_string(col) +
                               ": parse error: " + (pos == std::string::npos ? what : what.substr(pos + 2)));
  }
}

/// Data files are looked up in opt.data_path: a directory, or the file itself.
class DataFiles {
 public:
  explicit DataFiles(std::string root) : root_(std::move(root)) {}

  const Json& get(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    if (root_.empty())
      throw DataMissing{"data file " + name + " not available (set INVTOOL_DATA to its path or directory)"};
    fs::path p = fs::is_directory(root_) ? fs::path(root_) / name : fs::path(root_);
    if (!fs::is_regular_file(p)) throw DataMissing{"data file " + name + " not found at " + p.string()};
    return cache_.emplace(name, parse_json(slurp(p.string()), p.string())).first->second;
  }

 private:
  std::string root_;
  std::map<std::string, Json> cache_;
};

template <class F>
bool field_matches(const F& k, const Json& spec);

template <>
bool field_matches(const CyclotomicField& k, const Json& spec) {
  return spec.value("p", 0) == 0 && spec.value("conductor", 1) == k.conductor();
}

template <>
bool field_matches(const FiniteField& k, const Json& spec) {
  if (spec.value("p", 0) != k.characteristic()) return false;
  auto m = spec.value("modulus", std::string());
  return m.empty() ? k.degree() == 1 : FiniteField::create(k.characteristic(), m) == k;
}

template <class F>
typename F::Element determinant(const Matrix<F>& m) {
  auto c = charpoly(m);
  return m.rows % 2 ? -c[0] : c[0];
}

template <class F>
class Engine {
 public:
  using E = typename F::Element;
  using M = Matrix<F>;
  using Poly = typename GradedAlgebraR<F>::Poly;
  using Terms = std::vector<std::pair<E, std::vector<int>>>;

  struct Module {
    std::string group;
    std::vector<M> rho;
    std::vector<M> gamma;
    int dim = 1;
  };

  Engine(const Json& doc, F k, int D, const RunOptions& opt, DataFiles& data)
      : doc_(doc), k_(std::move(k)), D_(D), jobs_(opt.jobs), data_(data) {}

  void build() {
    if (doc_.contains("groups")) {
      auto& gs = doc_.at("groups");
      if (!gs.is_object()) bad("groups", "expected an object");
      for (auto& [name, spec] : gs.items()) groups_.emplace(name, group(spec, "groups." + name));
    }
    if (doc_.contains("modules")) {
      auto& ms = doc_.at("modules");
      if (!ms.is_object()) bad("modules", "expected an object");
      for (auto& [name, spec] : ms.items()) modules_.emplace(name, module(spec, "modules." + name));
    }
    if (doc_.contains("normalizations")) {
      auto& ns = doc_.at("normalizations");
      if (!ns.is_object()) bad("normalizations", "expected an object");
      for (auto& [name, spec] : ns.items()) normalizations_.emplace(name, normalization(spec, "normalizations." + name));
    }
  }

  /// Checks that every name a task references resolves, before anything runs.
  void resolve(const Json& task, const std::string& where) {
    auto type = text_of(need(task, "type", where), where + ".type");
    static const std::vector<std::string> known{"group",   "invariants", "molien", "tor",
                                                "omnibus", "springer",   "csp",    "modchar"};
    if (std::find(known.begin(), known.end(), type) == known.end()) bad(where + ".type", "unknown task \"" + type + "\"");
    group_of(task, where);
    if (task.contains("module")) module_of(task, where);
    if (task.contains("normalization")) normalization_of(task.at("normalization"), where + ".normalization");
    if (task.contains("subgroup")) named_group(task.at("subgroup"), where + ".subgroup");
    if (type == "springer" || type == "csp") need(task, "c", where);
    if (type == "springer" || type == "csp" || type == "modchar") need(task, "omega", where);
    if (type == "springer") need(task, "normalization", where);
    if (type == "csp") need(task, "subgroup", where);
    if (type == "modchar") need(task, "g", where);
  }

  TaskResult run(const Json& task, const std::string& where, Json& echo) {
    auto type = task.at("type").get<std::string>();
    auto& [gname, G] = group_of(task, where);
    echo["group"] = gname;
    echo["lift"] = CharacterContext<F>(k_, lift_order_for(G)).fingerprint();
    PolyRing<F> ring(k_, G.dim(), D_);
    if (type == "group") return group_report(G);
    if (type == "invariants")
      return invariants_report(ring, G, task.contains("degrees") ? ints_of(task.at("degrees"), where + ".degrees")
                                                                 : std::vector<int>{},
                               D_, jobs_);
    const Module* U = task.contains("module") ? &module_of(task, where) : nullptr;
    std::vector<M> rho = U ? U->rho : std::vector<M>{};
    if (type == "molien") return molien_report(ring, G, rho, D_, jobs_);
    int u = U ? U->dim : 1;
    auto Mspace = [&] { return rho.empty() ? invariants_up_to(ring, G, D_, jobs_) : relative_invariants_up_to(ring, G, rho, D_, jobs_); };
    if (type == "tor" || type == "omnibus") {
      auto R = algebra(task, ring, G, where);
      std::vector<ThetaGenerator<F>> gens;
      int nt = type == "omnibus" ? u : 0;
      for (auto& g : gamma_of(task, U, u, where)) gens.push_back({M::identity(k_, G.dim()), g, nt ? g : M::identity(k_, 0)});
      if (task.contains("theta")) {
        auto& th = task.at("theta");
        if (!th.is_array()) bad(where + ".theta", "expected an array");
        for (std::size_t i = 0; i < th.size(); ++i) {
          std::string w = where + ".theta[" + std::to_string(i) + "]";
          auto v = th[i].contains("v") ? matrix(th[i].at("v"), G.dim(), w + ".v") : M::identity(k_, G.dim());
          auto b = th[i].contains("u") ? matrix(th[i].at("u"), u, w + ".u") : M::identity(k_, u);
          gens.push_back({v, b, nt ? b : M::identity(k_, 0)});
        }
      }
      auto theta = make_theta(k_, G.dim(), u, nt, gens);
      if (type == "omnibus") return verify_omnibus(R, Mspace(), D_, theta, jobs_);
      bool pole = task.contains("expect_pole") && task.at("expect_pole").get<bool>();
      return tor_report(R, Mspace(), D_, theta, pole, jobs_);
    }
    if (type == "springer") {
      int c = element(need(task, "c", where), G, where + ".c");
      auto f = polys(ring, normalization_of(task.at("normalization"), where + ".normalization"));
      auto gamma = gamma_of(task, U, u, where);
      if (task.value("mode", std::string("polynomial")) == "fiber") return fiber(task, ring, G, c, rho, gamma, f, u, where);
      auto omega = scalar(task.at("omega"), G, c, where + ".omega");
      echo["omega"] = detail::show(omega);
      return verify_springer(ring, G, c, omega, rho, gamma, f, D_, jobs_);
    }
    if (type == "csp") {
      auto& [hname, Hg] = named_group(task.at("subgroup"), where + ".subgroup");
      std::vector<int> gens;
      for (auto& h : Hg.generators()) {
        int i = G.index_of(h);
        require(i >= 0, ErrorCode::Precondition, where + ": subgroup " + hname + " is not contained in " + gname);
        gens.push_back(i);
      }
      int c = element(task.at("c"), G, where + ".c");
      auto omega = scalar(task.at("omega"), G, c, where + ".omega");
      echo["omega"] = detail::show(omega);
      return csp_check(ring, G, G.subgroup_indices(gens), c, omega, D_, jobs_);
    }
    // modchar
    ModcharQuery<F> q;
    q.g = element(task.at("g"), G, where + ".g");
    q.omega = scalar_in_k(task.at("omega"), G, q.g, where + ".omega");
    echo["omega"] = q.omega ? detail::show(*q.omega) : "lift of an eigenvalue from the splitting field";
    q.rho_gens = rho;
    if (task.contains("degrees")) q.degrees = ints_of(task.at("degrees"), where + ".degrees");
    if (task.contains("normalization"))
      q.normalization = polys(ring, normalization_of(task.at("normalization"), where + ".normalization"));
    return character_from_series(ring, G, q, D_, jobs_);
  }

 private:
  const Json& doc_;
  F k_;
  int D_;
  int jobs_;
  DataFiles& data_;
  std::map<std::string, Group<F>> groups_;
  std::map<std::string, Module> modules_;
  std::map<std::string, std::vector<Terms>> normalizations_;

  E literal(const Json& j, const std::string& where) {
    auto s = text_of(j, where);
    try {
      return k_.parse(s);
    } catch (const Error& e) {
      bad(where, "bad literal \"" + s + "\": " + e.what());
    }
  }

  M matrix(const Json& j, int dim, const std::string& where) {
    if (!j.is_array()) bad(where, "expected a matrix (array of rows)");
    int n = static_cast<int>(j.size());
    if (dim >= 0 && n != dim) bad(where, "expected " + std::to_string(dim) + " rows");
    M m(k_, n, n);
    for (int r = 0; r < n; ++r) {
      std::string wr = where + "[" + std::to_string(r) + "]";
      if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) bad(wr, "expected " + std::to_string(n) + " entries");
      for (int c = 0; c < n; ++c) m(r, c) = literal(j[r][c], wr + "[" + std::to_string(c) + "]");
    }
    return m;
  }

  std::vector<M> matrices(const Json& j, int dim, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of matrices");
    std::vector<M> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(matrix(j[i], dim, where + "[" + std::to_string(i) + "]"));
      if (dim < 0) dim = out.back().rows;
    }
    return out;
  }

  const Json& data_file(const Json& spec, const std::string& where) {
    auto name = text_of(need(spec, "file", where), where + ".file");
    auto& d = data_.get(name);
    if (d.contains("field") && !field_matches(k_, d.at("field")))
      fail(ErrorCode::Precondition, where + ": data file " + name + " is over a different field");
    return d;
  }

  Group<F> group(const Json& spec, const std::string& where) {
    std::size_t cap = spec.contains("cap") ? static_cast<std::size_t>(int_of(spec.at("cap"), where + ".cap"))
                                           : kDefaultGroupCap;
    if (spec.contains("named")) {
      auto s = text_of(spec.at("named"), where + ".named");
      static const std::regex re(R"(\s*(cyclic_scalar|symmetric|dihedral|trivial)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*)");
      std::smatch m;
      if (!std::regex_match(s, m, re)) bad(where + ".named", "unknown constructor \"" + s + "\"");
      std::string kind = m[1];
      int a = std::stoi(m[2]);
      bool two = m[3].matched;
      if ((kind == "cyclic_scalar") != two) bad(where + ".named", "wrong number of arguments in \"" + s + "\"");
      require(a >= 1 && a <= 64, ErrorCode::Precondition, where + ": argument out of range in \"" + s + "\"");
      if (kind == "cyclic_scalar") {
        int dim = std::stoi(m[3]);
        require(dim >= 1 && dim <= 16, ErrorCode::Precondition, where + ": dimension out of range");
        return Group<F>::generate(k_, dim, {cyclic_scalar_generator(k_, a, dim)}, cap);
      }
      if (kind == "trivial") return Group<F>::generate(k_, a, {M::identity(k_, a)}, cap);
      if (kind == "symmetric") {
        auto gens = symmetric_generators(k_, a);
        if (gens.empty()) gens.push_back(M::identity(k_, a));
        return Group<F>::generate(k_, a, gens, cap);
      }
      return Group<F>::generate(k_, 2, dihedral_generators(k_, a), cap);
    }
    std::vector<M> gens;
    int dim = spec.contains("dim") ? int_of(spec.at("dim"), where + ".dim") : -1;
    if (spec.contains("data")) {
      auto& d = data_file(spec.at("data"), where + ".data");
      auto key = text_of(need(spec.at("data"), "key", where + ".data"), where + ".data.key");
      gens = matrices(need(d, key, where + ".data(" + key + ")"), dim, where + ".data(" + key + ")");
    } else {
      gens = matrices(need(spec, "generators", where), dim, where + ".generators");
    }
    if (gens.empty()) {
      require(dim >= 1, ErrorCode::Precondition, where + ": a group with no generators needs \"dim\"");
      gens.push_back(M::identity(k_, dim));
    }
    return Group<F>::generate(k_, gens.front().rows, gens, cap);
  }

  std::pair<const std::string, Group<F>>& named_group(const Json& j, const std::string& where) {
    auto name = text_of(j, where);
    auto it = groups_.find(name);
    if (it == groups_.end()) fail(ErrorCode::Precondition, where + ": missing block groups." + name);
    return *it;
  }

  std::pair<const std::string, Group<F>>& group_of(const Json& task, const std::string& where) {
    return named_group(task.contains("group") ? task.at("group") : Json("G"), where + ".group");
  }

  Module module(const Json& spec, const std::string& where) {
    Module out;
    out.group = text_of(need(spec, "group", where), where + ".group");
    auto& G = named_group(spec.at("group"), where + ".group").second;
    int ng = static_cast<int>(G.generators().size());
    if (spec.contains("matrices")) {
      out.rho = matrices(spec.at("matrices"), -1, where + ".matrices");
      if (static_cast<int>(out.rho.size()) != ng)
        bad(where + ".matrices", "expected one matrix per generator of " + out.group + " (" + std::to_string(ng) + ")");
      out.dim = out.rho.front().rows;
      for (auto& m : out.rho) require(m.rows == out.dim, ErrorCode::Parse, where + ": matrices of different sizes");
      if (spec.contains("gamma")) out.gamma = matrices(spec.at("gamma"), out.dim, where + ".gamma");
      return out;
    }
    auto name = text_of(need(spec, "name", where), where + ".name");
    if (name == "trivial") {
      out.rho.assign(ng, M::identity(k_, 1));
    } else if (name == "sign" || name == "det") {
      for (auto& g : G.generators()) out.rho.push_back(M::scalar(k_, 1, determinant(g)));
    } else if (name == "natural") {
      out.rho = G.generators();
      out.dim = G.dim();
    } else if (name == "regular" || name == "induced") {
      std::vector<int> H{G.identity()};
      if (name == "induced") {
        auto& [hname, Hg] = named_group(need(spec, "subgroup", where), where + ".subgroup");
        std::vector<int> gens;
        for (auto& h : Hg.generators()) {
          int i = G.index_of(h);
          require(i >= 0, ErrorCode::Precondition, where + ": subgroup " + hname + " is not contained in " + out.group);
          gens.push_back(i);
        }
        H = G.subgroup_indices(gens);
      }
      auto b = induced_coset_module(G, H);
      out.rho = b.rho_gens;
      out.gamma = b.gamma_gens;
      out.dim = b.dim;
    } else {
      bad(where + ".name", "unknown module \"" + name + "\" (trivial, sign, det, natural, regular, induced)");
    }
    if (spec.contains("gamma") && name != "regular" && name != "induced")
      out.gamma = matrices(spec.at("gamma"), out.dim, where + ".gamma");
    return out;
  }

  const Module& module_of(const Json& task, const std::string& where) {
    auto name = text_of(task.at("module"), where + ".module");
    auto it = modules_.find(name);
    if (it == modules_.end()) fail(ErrorCode::Precondition, where + ": missing block modules." + name);
    auto g = task.contains("group") ? task.at("group").get<std::string>() : std::string("G");
    require(it->second.group == g, ErrorCode::Precondition,
            where + ": module " + name + " is a module for " + it->second.group + ", not " + g);
    return it->second;
  }

  Terms terms(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where, "expected a nonempty term list");
    Terms out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::string w = where + "[" + std::to_string(i) + "]";
      if (!j[i].is_array() || j[i].size() != 2) bad(w, "expected [coefficient, exponents]");
      out.push_back({literal(j[i][0], w + "[0]"), ints_of(j[i][1], w + "[1]")});
    }
    return out;
  }

  std::vector<Terms> normalization(const Json& spec, const std::string& where) {
    std::vector<Terms> out;
    if (spec.contains("data")) {
      auto& d = data_file(spec.at("data"), where + ".data");
      auto& keys = need(spec.at("data"), "keys", where + ".data");
      if (!keys.is_array()) bad(where + ".data.keys", "expected an array of names");
      auto& inv = need(d, "invariants", where + ".data");
      for (auto& key : keys) {
        auto name = text_of(key, where + ".data.keys");
        out.push_back(terms(need(inv, name, where + ".data(invariants)"), where + ".data(" + name + ")"));
      }
      return out;
    }
    auto& ps = need(spec, "polynomials", where);
    if (!ps.is_array()) bad(where + ".polynomials", "expected an array of term lists");
    for (std::size_t i = 0; i < ps.size(); ++i) out.push_back(terms(ps[i], where + ".polynomials[" + std::to_string(i) + "]"));
    return out;
  }

  const std::vector<Terms>& normalization_of(const Json& j, const std::string& where) {
    auto name = text_of(j, where);
    auto it = normalizations_.find(name);
    if (it == normalizations_.end()) fail(ErrorCode::Precondition, where + ": missing block normalizations." + name);
    return it->second;
  }

  std::vector<Poly> polys(const PolyRing<F>& ring, const std::vector<Terms>& ts) {
    std::vector<Poly> out;
    for (auto& t : ts) {
      int d = 0;
      auto v = ring.from_terms(t, d);
      out.push_back({d, std::move(v)});
    }
    return out;
  }

  GradedAlgebraR<F> algebra(const Json& task, const PolyRing<F>& ring, const Group<F>& G, const std::string& where) {
    if (!task.contains("R")) return GradedAlgebraR<F>::by_degrees(ring, invariants_up_to(ring, G, D_, jobs_));
    auto& r = task.at("R");
    if (r.is_object() && r.contains("invariants_of")) {
      auto& H = named_group(r.at("invariants_of"), where + ".R.invariants_of").second;
      require(H.dim() == G.dim(), ErrorCode::Precondition, where + ": R.invariants_of acts on a different space");
      return GradedAlgebraR<F>::by_degrees(ring, invariants_up_to(ring, H, D_, jobs_));
    }
    if (r.is_object() && r.contains("normalization"))
      return GradedAlgebraR<F>::polynomial(ring, polys(ring, normalization_of(r.at("normalization"), where + ".R.normalization")), D_);
    bad(where + ".R", "expected {\"invariants_of\": group} or {\"normalization\": name}");
  }

  std::vector<M> gamma_of(const Json& task, const Module* U, int u, const std::string& where) {
    if (!task.contains("gamma")) return {};
    auto& g = task.at("gamma");
    if (g.is_string() && g.get<std::string>() == "module") {
      require(U && !U->gamma.empty(), ErrorCode::Precondition, where + ": the module carries no gamma action");
      return U->gamma;
    }
    return matrices(g, u, where + ".gamma");
  }

  int element(const Json& spec, const Group<F>& G, const std::string& where) {
    if (spec.is_string() && spec.get<std::string>() == "identity") return G.identity();
    if (!spec.is_object()) bad(where, "expected \"identity\" or an element object");
    if (spec.contains("generator")) {
      int i = int_of(spec.at("generator"), where + ".generator");
      if (i < 0 || i >= static_cast<int>(G.generators().size())) bad(where + ".generator", "index out of range");
      return G.generator_indices()[i];
    }
    if (spec.contains("word")) {
      int x = G.identity();
      for (int i : ints_of(spec.at("word"), where + ".word")) {
        if (i < 0 || i >= static_cast<int>(G.generators().size())) bad(where + ".word", "index out of range");
        x = G.mul(x, G.generator_indices()[i]);
      }
      return x;
    }
    if (spec.contains("matrix")) {
      int i = G.index_of(matrix(spec.at("matrix"), G.dim(), where + ".matrix").normalized());
      require(i >= 0, ErrorCode::Precondition, where + ": matrix is not in the group");
      return i;
    }
    if (spec.contains("class_order")) {
      long long o = int_of(spec.at("class_order"), where + ".class_order");
      for (auto& c : G.classes())
        if (c.order == o) return c.representative;
      fail(ErrorCode::Precondition, where + ": no element of order " + std::to_string(o));
    }
    bad(where, "expected one of generator, word, matrix, class_order");
  }

  /// "auto" picks the least eigenvalue of g whose order is the order of g.
  E scalar(const Json& spec, const Group<F>& G, int g, const std::string& where) {
    auto w = scalar_in_k(spec, G, g, where);
    if (!w)
      fail(ErrorCode::Precondition, where + ": g has no eigenvalue of order " + std::to_string(G.element_order(g)) +
                                        " in " + k_.describe());
    return *w;
  }

  /// nullopt when "auto" finds no eigenvalue of the right order in k itself.
  std::optional<E> scalar_in_k(const Json& spec, const Group<F>& G, int g, const std::string& where) {
    if (!(spec.is_string() && spec.get<std::string>() == "auto")) return literal(spec, where);
    long long o = G.element_order(g);
    auto is_eigen = [&](const E& w) {
      return !kernel(G.element(g) - M::scalar(k_, G.dim(), w)).basis.empty();
    };
    if constexpr (std::is_same_v<F, CyclotomicField>) {
      for (long long j = 1; j <= o; ++j)
        if (std::gcd(j, o) == 1 && is_eigen(k_.coerce(CyclotomicNumber::zeta(o, j)))) return k_.coerce(CyclotomicNumber::zeta(o, j));
    } else {
      for (long long i = 1; i < k_.order(); ++i) {
        auto w = k_.from_index(static_cast<std::uint32_t>(i));
        if (element_order(w) == o && is_eigen(w)) return w;
      }
    }
    return std::nullopt;
  }

  TaskResult fiber(const Json& task, const PolyRing<F>& ring, const Group<F>& G, int c, const std::vector<M>& rho,
                   const std::vector<M>& gamma, const std::vector<Poly>& f, int u, const std::string& where) {
    if constexpr (!std::is_same_v<F, FiniteField>) {
      fail(ErrorCode::Precondition, where + ": the fiber route needs a finite field");
    } else {
      auto& vj = need(task, "v", where);
      if (!vj.is_array() || static_cast<int>(vj.size()) != G.dim()) bad(where + ".v", "expected a vector of length dim V");
      Vec<F> v;
      for (std::size_t i = 0; i < vj.size(); ++i) v.push_back(literal(vj[i], where + ".v[" + std::to_string(i) + "]"));
      auto e = M::identity(k_, 0);
      std::vector<ThetaGenerator<F>> gens;
      for (auto& g : gamma) gens.push_back({M::identity(k_, G.dim()), g, e});
      gens.push_back({G.element(c), M::identity(k_, u), e});
      auto theta = make_theta(k_, G.dim(), u, 0, gens);
      bool free = !task.contains("require_free") || task.at("require_free").get<bool>();
      auto r = verify_fiber_euler(ring, G, rho.empty() ? std::vector<M>(G.generators().size(), M::identity(k_, 1)) : rho,
                                  f, v, theta, D_, free, jobs_);
      r.task = "springer";
      return r;
    }
  }

  TaskResult group_report(const Group<F>& G) {
    TaskResult out;
    out.task = "group";
    CharacterContext<F> ctx(k_, lift_order_for(G));
    std::map<long long, int> seen;
    Json rows = Json::array();
    std::string t = "|G| = " + std::to_string(G.order()) + ", dim V = " + std::to_string(G.dim()) + "\n";
    t += "class  order  size  p-regular\n";
    out.csv = "class,order,size,p_regular\n";
    auto cls = G.classes();
    for (auto& c : cls) {
      std::string label = std::to_string(c.order) + static_cast<char>('a' + seen[c.order]++);
      rows.push_back(Json{{"class", label}, {"order", c.order}, {"size", c.members.size()}, {"p_regular", c.p_regular}});
      std::ostringstream os;
      os << label << std::string(label.size() < 7 ? 7 - label.size() : 1, ' ') << c.order << "  " << c.members.size()
         << "  " << (c.p_regular ? "yes" : "no") << "\n";
      t += os.str();
      out.csv += label + "," + std::to_string(c.order) + "," + std::to_string(c.members.size()) + "," +
                 (c.p_regular ? "1" : "0") + "\n";
    }
    out.data["order"] = G.order();
    out.data["dim"] = G.dim();
    out.data["classes"] = rows;
    out.data["verdict"] = status_name(out.status);
    out.text = t + "verdict: " + status_name(out.status) + "\n";
    return out;
  }
};

struct FieldChoice {
  int p = 0;
  int conductor = 1;
  std::string modulus;
};

FieldChoice field_choice(const Json& doc) {
  auto& f = need(doc, "field", "scenario");
  FieldChoice out;
  out.p = int_of(need(f, "characteristic", "field"), "field.characteristic");
  if (out.p == 0) {
    if (f.contains("conductor")) out.conductor = int_of(f.at("conductor"), "field.conductor");
    require(out.conductor >= 1, ErrorCode::Parse, "field.conductor: must be positive");
  } else {
    require(is_prime(out.p), ErrorCode::Parse, "field.characteristic: must be 0 or a prime");
    if (f.contains("modulus")) out.modulus = text_of(f.at("modulus"), "field.modulus");
  }
  return out;
}

template <class F>
void run_with(const Json& doc, const F& k, int D, const RunOptions& opt, DataFiles& data, ScenarioReport& rep) {
  Engine<F> eng(doc, k, D, opt, data);
  eng.build();
  const Json empty = Json::array();
  auto& tasks = doc.contains("tasks") ? doc.at("tasks") : empty;
  if (!tasks.is_array()) bad("tasks", "expected an array");
  for (std::size_t i = 0; i < tasks.size(); ++i) eng.resolve(tasks[i], "tasks[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::string where = "tasks[" + std::to_string(i) + "]";
    Json echo = tasks[i];
    TaskResult r;
    try {
      r = eng.run(tasks[i], where, echo);
    } catch (const Error& e) {
      r = TaskResult{};
      r.task = tasks[i].at("type").get<std::string>();
      r.status = Status::Error;
      r.data["error"] = error_code_name(e.code());
      r.data["message"] = e.what();
      r.text = std::string("error (") + error_code_name(e.code()) + "): " + e.what() + "\n";
    }
    rep.echoes.push_back(std::move(echo));
    rep.tasks.push_back(std::move(r));
  }
}

std::string indent(const std::string& s) {
  std::string out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out += (line.empty() ? "" : "  ") + line + "\n";
  return out;
}

}  // namespace

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::optional<Format> parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  return std::nullopt;
}

Scenario Scenario::from_file(const std::string& path) { return from_string(slurp(path), path); }

Scenario Scenario::from_string(const std::string& text, const std::string& source) {
  Scenario s;
  s.source_ = source;
  s.doc_ = parse_json(text, source);
  if (!s.doc_.is_object()) bad(source, "a scenario is a JSON object");
  auto& v = need(s.doc_, "schema", source);
  if (!v.is_number_integer() || v.get<int>() != kScenarioSchema)
    bad(source + ": schema", "unsupported schema version (expected " + std::to_string(kScenarioSchema) + ")");
  text_of(need(s.doc_, "name", source), source + ": name");
  field_choice(s.doc_);
  int D = int_of(need(s.doc_, "truncation", source), "truncation");
  require(D >= 1, ErrorCode::Parse, source + ": truncation must be at least 1");
  if (s.doc_.contains("tasks") && !s.doc_.at("tasks").is_array()) bad(source + ": tasks", "expected an array");
  return s;
}

std::string Scenario::name() const { return doc_.at("name").get<std::string>(); }

std::string Scenario::description() const { return doc_.value("description", std::string()); }

std::size_t Scenario::task_count() const { return doc_.contains("tasks") ? doc_.at("tasks").size() : 0; }

ScenarioReport Scenario::run(const RunOptions& opt) const {
  ScenarioReport rep;
  auto fc = field_choice(doc_);
  int D = opt.truncation ? *opt.truncation : doc_.at("truncation").get<int>();
  require(D >= 1, ErrorCode::Precondition, "truncation must be at least 1");
  require(opt.jobs >= 1, ErrorCode::Precondition, "jobs must be at least 1");
  rep.header["scenario"] = name();
  rep.header["description"] = description();
  rep.header["schema"] = kScenarioSchema;
  rep.header["truncation"] = D;
  DataFiles data(opt.data_path);
  try {
    if (fc.p == 0) {
      CyclotomicField k(fc.conductor);
      rep.header["field"] = k.describe();
      run_with(doc_, k, D, opt, data, rep);
    } else {
      auto k = fc.modulus.empty() ? FiniteField::create(fc.p, 1) : FiniteField::create(fc.p, fc.modulus);
      rep.header["field"] = k.describe();
      run_with(doc_, k, D, opt, data, rep);
    }
  } catch (const DataMissing& m) {
    rep.echoes.clear();
    rep.tasks.clear();
    rep.notice = "skipped: " + m.message;
    rep.overall = Status::NotCheckable;
    return rep;
  }
  for (auto& t : rep.tasks) rep.overall = worst(rep.overall, t.status);
  return rep;
}

int ScenarioReport::exit_code() const {
  bool hyp = false;
  for (auto& t : tasks) {
    if (t.status == Status::Fail || t.status == Status::Error) return 1;
    hyp = hyp || t.status == Status::HypothesisFailure;
  }
  return hyp ? 2 : 0;
}

std::string ScenarioReport::render(Format f) const {
  if (f == Format::Json) {
    Json j = header;
    if (!notice.empty()) j["notice"] = notice;
    Json ts = Json::array();
    for (std::size_t i = 0; i < tasks.size(); ++i)
      ts.push_back(Json{{"index", i + 1},
                        {"task", echoes[i]},
                        {"status", status_name(tasks[i].status)},
                        {"data", tasks[i].data}});
    j["tasks"] = ts;
    j["overall"] = status_name(overall);
    return j.dump(2) + "\n";
  }
  if (f == Format::Csv) {
    std::string s = "# scenario " + header.value("scenario", std::string()) + ", truncation " +
                    std::to_string(header.value("truncation", 0)) + "\n";
    if (!notice.empty()) s += "# " + notice + "\n";
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      s += "# task " + std::to_string(i + 1) + " " + tasks[i].task + " " + status_name(tasks[i].status) + "\n";
      s += tasks[i].csv;
    }
    return s;
  }
  std::string s;
  s += "scenario: " + header.value("scenario", std::string()) + "\n";
  if (!header.value("description", std::string()).empty()) s += "description: " + header.value("description", std::string()) + "\n";
  s += "field: " + header.value("field", std::string("?")) + "\n";
  s += "truncation: " + std::to_string(header.value("truncation", 0)) + "\n";
  if (!notice.empty()) s += notice + "\n";
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    s += "\n[" + std::to_string(i + 1) + "] " + tasks[i].task + "\n";
    s += "  task: " + echoes[i].dump() + "\n";
    s += indent(tasks[i].text);
    s += "  status: " + std::string(status_name(tasks[i].status)) + "\n";
  }
  s += "\noverall: " + std::string(status_name(overall)) + "\n";
  return s;
}

}  // namespace invt
