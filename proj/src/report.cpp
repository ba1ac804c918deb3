#include "toricmot/report.hpp"

#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

namespace toricmot {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolName = "toricmot";
constexpr const char* kToolVersion = "0.1.0";

std::string fnv1a64(const std::string& data) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << h;
  return os.str();
}

json vec_json(const IVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json vecs_json(const std::vector<IVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

json poles_json(const std::vector<PolePair>& ps) {
  json a = json::array();
  for (const auto& [x, y] : ps) a.push_back(json::array({x.get_str(), y.get_str()}));
  return a;
}

json poly_json(const Poly2& p) {
  json a = json::array();
  for (const auto& [e, c] : p.terms)
    a.push_back(json::array({e.first, e.second, Rat(c).get_str()}));
  return a;
}

json den_json(const std::vector<DenFactor>& den) {
  json a = json::array();
  for (const auto& [x, y] : den) a.push_back(json::array({x, y}));
  return a;
}

json rational_json(const MotivicRational& raw, const MotivicRational& irredundant) {
  json r;
  r["scalar"] = raw.scalar.get_str();
  r["numerator"] = poly_json(raw.num);
  r["denominator"] = den_json(raw.den);
  json irr;
  irr["scalar"] = irredundant.scalar.get_str();
  irr["numerator"] = poly_json(irredundant.num);
  irr["denominator"] = den_json(irredundant.den);
  r["irredundant"] = irr;
  r["display"] = mr_to_string(irredundant);
  return r;
}

// Raw form over the full candidate set: numerator times the missing factors.
MotivicRational raw_over_candidates(const MotivicRational& irredundant,
                                    const std::vector<PolePair>& candidates) {
  std::map<DenFactor, int> want;
  for (const auto& [a, b] : candidates) want[{to_long(a), to_long(b)}] = 1;
  std::map<DenFactor, int> have;
  for (const auto& f : irredundant.den) ++have[f];
  for (const auto& [f, c] : have)
    if (want[f] < c) want[f] = c;  // keep any extra multiplicity
  MotivicRational raw;
  raw.scalar = irredundant.scalar;
  raw.num = irredundant.num;
  std::vector<DenFactor> missing;
  for (const auto& [f, c] : want) {
    for (int k = 0; k < c; ++k) raw.den.push_back(f);
    int extra = c - (have.count(f) ? have.at(f) : 0);
    for (int k = 0; k < extra; ++k) missing.push_back(f);
  }
  raw.num = raw.num * den_product(missing);
  return raw;
}

json expansion_json(const SeriesExpansion& e) {
  json a = json::array();
  for (int s = 0; s <= e.order; ++s) {
    json row = json::array();
    for (const auto& [le, c] : e.coeff[s]) row.push_back(json::array({le, Rat(c).get_str()}));
    a.push_back(json::array({s, row}));
  }
  return a;
}

json input_json(const InputSpec& in) {
  json j;
  j["lattice_rank"] = in.lattice_rank;
  j["generators"] = vecs_json(in.generators);
  j["normal"] = in.normal;
  j["mode"] = in.mode == ModeChoice::local ? "local" : "global";
  switch (in.series) {
    case SeriesChoice::arithmetic: j["series"] = "arithmetic"; break;
    case SeriesChoice::geometric: j["series"] = "geometric"; break;
    case SeriesChoice::both: j["series"] = "both"; break;
    case SeriesChoice::difference: j["series"] = "difference"; break;
  }
  j["expand"] = in.expand_order;
  j["guard"] = in.guard;
  return j;
}

json strata_json(const std::vector<Stratum>& strata) {
  json arr = json::array();
  for (const auto& st : strata) {
    json s;
    s["j"] = st.j;
    s["dim"] = st.theta.dim;
    s["rays"] = vecs_json(st.theta.rays);
    s["empty"] = st.empty;
    if (!st.empty) {
      s["l"] = st.l;
      s["q"] = st.q.get_str();
      s["contributes"] = st.contributes;
      s["witness_nu"] = vec_json(st.witness_nu);
      s["witness_s"] = st.witness_s.get_str();
      s["poles"] = poles_json(st.poles);
    }
    arr.push_back(std::move(s));
  }
  return arr;
}

json header(const InputSpec& in) {
  json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["input"] = input_json(in);
  return doc;
}

std::string finalize(json doc) {
  std::string body = doc.dump(2);
  doc["content_hash"] = fnv1a64(body);
  return doc.dump(2);
}

SemigroupData build_from_input(const InputSpec& in) {
  return build_semigroup(in.lattice_rank, in.generators, in.normal);
}

json nicaise_json(const NicaiseResult& res) {
  json n;
  n["verdict"] = res.verdict;
  json certs = json::array();
  for (const auto& c : res.certificates) {
    json cj;
    cj["level"] = c.level;
    cj["vertex"] = vec_json(c.vertex);
    cj["ok"] = c.ok;
    json idx = json::array();
    for (int i : c.subset) idx.push_back(i);
    cj["subset"] = idx;
    certs.push_back(std::move(cj));
  }
  n["certificates"] = certs;
  return n;
}

}  // namespace

SeriesChoice series_choice_from_string(const std::string& s) {
  if (s == "arithmetic") return SeriesChoice::arithmetic;
  if (s == "geometric") return SeriesChoice::geometric;
  if (s == "both") return SeriesChoice::both;
  if (s == "difference") return SeriesChoice::difference;
  throw std::invalid_argument("unknown series choice: " + s);
}

ModeChoice mode_choice_from_string(const std::string& s) {
  if (s == "local") return ModeChoice::local;
  if (s == "global") return ModeChoice::global;
  throw std::invalid_argument("unknown mode: " + s);
}

InputSpec parse_input_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("input is not valid JSON: ") + e.what());
  }
  InputSpec in;
  if (!j.contains("lattice_rank") || !j["lattice_rank"].is_number_integer())
    throw validation_error("input: missing integer field lattice_rank");
  in.lattice_rank = j["lattice_rank"].get<int>();
  if (!j.contains("generators") || !j["generators"].is_array())
    throw validation_error("input: missing array field generators");
  for (const auto& row : j["generators"]) {
    if (!row.is_array()) throw validation_error("input: generator is not an array");
    IVec v;
    for (const auto& x : row) {
      if (x.is_number_integer())
        v.push_back(Int(long(x.get<long long>())));
      else if (x.is_string())
        v.push_back(Int(x.get<std::string>()));
      else
        throw validation_error("input: generator entry is not an integer");
    }
    in.generators.push_back(std::move(v));
  }
  if (j.contains("normal")) in.normal = j["normal"].get<bool>();
  if (j.contains("mode")) in.mode = mode_choice_from_string(j["mode"].get<std::string>());
  if (j.contains("series"))
    in.series = series_choice_from_string(j["series"].get<std::string>());
  if (j.contains("expand")) in.expand_order = j["expand"].get<int>();
  if (j.contains("guard")) in.guard = j["guard"].get<int>();
  return in;
}

InputSpec parse_input_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open input file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse_input_json(os.str());
}

std::string report_compute(const InputSpec& in) {
  SemigroupData s = build_from_input(in);
  json doc = header(in);

  if (in.mode == ModeChoice::global) {
    MotivicRational g = global_series_normal(s, in.guard);
    json faces = json::array();
    for (const auto& theta : semigroup_faces(s)) {
      SemigroupData piece = quotient_face_semigroup(s, theta);
      json fj;
      fj["dim"] = theta.dim;
      fj["rays"] = vecs_json(theta.rays);
      fj["codim"] = s.d - theta.dim;
      fj["quotient_generators"] = vecs_json(piece.gens);
      faces.push_back(std::move(fj));
    }
    doc["faces"] = faces;
    json series;
    series["arithmetic"] = rational_json(g, g);
    doc["series"] = series;
    if (in.expand_order >= 0) {
      json ex;
      ex["order"] = in.expand_order;
      ex["arithmetic"] = expansion_json(expand(g, in.expand_order));
      doc["expansion"] = ex;
    }
    return finalize(std::move(doc));
  }

  auto faces = compute_local(s, in.guard);
  const FaceComputation* origin = nullptr;
  for (const auto& fc : faces)
    if (!fc.trivial && fc.eta.dim == 0) origin = &fc;
  if (!origin) throw certification_error("report: origin face missing");

  doc["strata"] = strata_json(origin->strata);

  json facearr = json::array();
  for (const auto& fc : faces) {
    json fj;
    fj["dim"] = fc.eta.dim;
    fj["rays"] = vecs_json(fc.eta.rays);
    fj["trivial"] = fc.trivial;
    if (!fc.trivial) {
      fj["generators"] = vecs_json(fc.face_sg.gens);
      fj["lattice_rank"] = fc.face_sg.d;
    }
    fj["q"] = fc.q_lcm.get_str();
    fj["pole_candidates"] = poles_json(fc.pole_candidates);
    MotivicRational fs = MotivicRational::zero();
    if (fc.trivial) {
      fs.num = Poly2::constant(Rat(1));
      fs.den = {{0, 1}};
    } else {
      std::vector<MotivicRational> parts;
      for (size_t i = 0; i < fc.strata.size(); ++i) {
        const Stratum& st = fc.strata[i];
        if (st.empty || !st.contributes) continue;
        parts.push_back(mr_scale(ratio(Int(1), st.q), fc.series[i]));
      }
      fs = mr_sum(std::move(parts));
    }
    fj["series"] = rational_json(fs, fs);
    facearr.push_back(std::move(fj));
  }
  doc["faces"] = facearr;
  doc["q_strata"] = origin->q_lcm.get_str();
  doc["q_faces"] = q_lcm_over_faces(faces).get_str();
  doc["pole_candidates"] = poles_json(origin->pole_candidates);
  doc["pole_candidates_faces"] = poles_json(pole_union_over_faces(faces));

  json series;
  MotivicRational arith, geom;
  bool want_arith = in.series != SeriesChoice::geometric;
  bool want_geom = in.series != SeriesChoice::arithmetic;
  if (want_arith) {
    arith = assemble_local(faces, true);
    series["arithmetic"] =
        rational_json(raw_over_candidates(arith, pole_union_over_faces(faces)), arith);
  }
  if (want_geom) {
    geom = assemble_local(faces, false);
    series["geometric"] =
        rational_json(raw_over_candidates(geom, pole_union_over_faces(faces)), geom);
  }
  if (in.series == SeriesChoice::difference || in.series == SeriesChoice::both) {
    MotivicRational direct = assemble_difference(faces);
    if (!mr_equal(mr_sub(arith, geom), direct))
      throw certification_error("difference disagrees with the stratum-wise sum");
    series["difference"] = rational_json(direct, direct);
  }
  doc["series"] = series;

  if (in.expand_order >= 0) {
    json ex;
    ex["order"] = in.expand_order;
    if (want_arith) ex["arithmetic"] = expansion_json(expand(arith, in.expand_order));
    if (want_geom) ex["geometric"] = expansion_json(expand(geom, in.expand_order));
    doc["expansion"] = ex;
  }

  doc["nicaise"] = nicaise_json(check_nicaise(s));
  return finalize(std::move(doc));
}

std::string report_strata(const InputSpec& in) {
  SemigroupData s = build_from_input(in);
  IdealFamily fam = phi_sequences(s);
  auto strata = enumerate_strata(fam);
  json doc = header(in);
  doc["strata"] = strata_json(strata);
  Int q = 1;
  std::set<PolePair> poles;
  for (const auto& st : strata) {
    if (st.empty || !st.contributes) continue;
    q = lcm(q, st.q);
    poles.insert(st.poles.begin(), st.poles.end());
  }
  doc["q_strata"] = q.get_str();
  doc["pole_candidates"] = poles_json({poles.begin(), poles.end()});
  return finalize(std::move(doc));
}

std::string report_oracle(const InputSpec& in) {
  if (in.expand_order < 0)
    throw validation_error("oracle report requires an expansion order");
  SemigroupData s = build_from_input(in);
  json doc = header(in);
  json ex;
  ex["order"] = in.expand_order;
  if (in.series != SeriesChoice::geometric)
    ex["arithmetic"] = expansion_json(oracle_series(s, in.expand_order, true));
  if (in.series == SeriesChoice::geometric || in.series == SeriesChoice::both)
    ex["geometric"] = expansion_json(oracle_series(s, in.expand_order, false));
  doc["expansion"] = ex;
  return finalize(std::move(doc));
}

std::string report_nicaise(const InputSpec& in) {
  SemigroupData s = build_from_input(in);
  json doc = header(in);
  doc["nicaise"] = nicaise_json(check_nicaise(s));
  return finalize(std::move(doc));
}

std::string render_text(const std::string& report_json) {
  json doc = json::parse(report_json);
  std::ostringstream os;
  os << doc["tool"]["name"].get<std::string>() << " "
     << doc["tool"]["version"].get<std::string>() << "\n";
  const auto& in = doc["input"];
  os << "lattice rank " << in["lattice_rank"] << ", generators";
  for (const auto& g : in["generators"]) {
    os << " (";
    for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i].get<std::string>();
    os << ")";
  }
  os << "\n";
  if (doc.contains("strata")) {
    os << "\nstrata (j | rays | l | q | contributes | pole pairs):\n";
    for (const auto& st : doc["strata"]) {
      os << "  j=" << st["j"] << "  ";
      std::ostringstream rays;
      for (const auto& r : st["rays"]) {
        rays << "(";
        for (size_t i = 0; i < r.size(); ++i) rays << (i ? "," : "") << r[i].get<std::string>();
        rays << ")";
      }
      os << rays.str();
      if (st["empty"].get<bool>()) {
        os << "  empty\n";
        continue;
      }
      os << "  l=" << st["l"] << " q=" << st["q"].get<std::string>()
         << (st["contributes"].get<bool>() ? "  contributes " : "  boundary    ");
      for (const auto& p : st["poles"])
        os << " (" << p[0].get<std::string>() << "," << p[1].get<std::string>() << ")";
      os << "\n";
    }
  }
  if (doc.contains("q_strata"))
    os << "\nq over strata: " << doc["q_strata"].get<std::string>() << "\n";
  if (doc.contains("q_faces"))
    os << "q over faces:  " << doc["q_faces"].get<std::string>() << "\n";
  if (doc.contains("series")) {
    for (const auto& [name, body] : doc["series"].items())
      os << "\n" << name << " = " << body["display"].get<std::string>() << "\n";
  }
  if (doc.contains("expansion")) {
    os << "\nexpansion to order " << doc["expansion"]["order"] << ":\n";
    for (const auto& [name, rows] : doc["expansion"].items()) {
      if (name == "order") continue;
      os << "  " << name << ":\n";
      for (const auto& row : rows) {
        os << "    T^" << row[0] << ":";
        for (const auto& t : row[1])
          os << " " << t[1].get<std::string>() << "*L^" << t[0];
        os << "\n";
      }
    }
  }
  if (doc.contains("nicaise")) {
    os << "\nequality criterion: "
       << (doc["nicaise"]["verdict"].get<bool>() ? "holds" : "fails") << "\n";
  }
  if (doc.contains("content_hash"))
    os << "\ncontent hash: " << doc["content_hash"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace toricmot
