#include "salat/json_io.hpp"

namespace salat {

Json to_json(const Int& a) { return to_string(a); }
Json to_json(const Rat& q) { return to_string(q); }

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  // Plain JSON integers are accepted on input for convenience.
  if (j.is_number_integer()) return j.dump();
  throw Error(ErrorKind::Parse, "expected a number string, got " + j.dump());
}

}  // namespace

Int int_from_json(const Json& j) { return parse_int(text_of(j)); }
Rat rat_from_json(const Json& j) { return parse_rat(text_of(j)); }

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array");
  IntVector v;
  for (const auto& e : j) v.push_back(int_from_json(e));
  return v;
}

RatVector rat_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array");
  RatVector v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    IntVector row = int_vector_from_json(j[i]);
    if (row.size() != cols) throw Error(ErrorKind::Parse, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

Json instance_to_json(const GeneralInstance& inst) {
  Json j;
  j["n"] = inst.n;
  j["k"] = to_json(inst.k);
  j["m"] = to_json(inst.m);
  j["gamma"] = to_string(inst.gamma);
  j["norm"] = std::string(to_string(inst.norm));
  if (inst.target) j["target"] = to_json(*inst.target);
  return j;
}

GeneralInstance instance_from_json(const Json& j) {
  GeneralInstance inst;
  const Json& n = field(j, "n");
  if (!n.is_number_unsigned()) throw Error(ErrorKind::Parse, "'n' must be a non-negative integer");
  inst.n = n.get<std::size_t>();
  inst.k = int_from_json(field(j, "k"));
  inst.m = int_matrix_from_json(field(j, "m"));
  inst.gamma = j.contains("gamma") ? parse_gamma(j.at("gamma").get<std::string>()) : Gamma{};
  inst.norm = j.contains("norm") ? parse_norm(j.at("norm").get<std::string>()) : NormKind::L2;
  if (j.contains("target") && !j.at("target").is_null()) inst.target = rat_vector_from_json(j.at("target"));
  return inst;
}

Json sa_to_json(const SAInstance& sa, const GeneralInstance& inst) {
  Json j;
  j["instance"] = instance_to_json(inst);
  j["n"] = sa.n;
  j["k"] = to_json(sa.k);
  j["mode"] = std::string(to_string(sa.mode));
  j["c"] = to_json(sa.c);
  j["x"] = to_json(sa.x);
  j["m_tilde"] = to_json(sa.m_tilde);
  j["b1"] = to_json(sa.b1);
  j["b2"] = to_json(sa.b2);
  j["det_b1"] = to_json(sa.det_b1);
  j["det_b2"] = to_json(sa.det_b2);
  Json trace = Json::array();
  for (const auto& r : sa.trace.records) {
    Json e;
    e["iteration"] = r.iteration;
    e["shift"] = r.shift;
    e["det_b1"] = to_json(r.det_b1);
    e["det_b2"] = to_json(r.det_b2);
    e["max_entry"] = to_json(r.max_entry);
    e["shift_bound"] = to_json(r.shift_bound);
    e["bumps"] = r.bumps;
    trace.push_back(std::move(e));
  }
  j["tie_bumped"] = sa.trace.tie_bumped;
  j["trace"] = std::move(trace);
  return j;
}

SAInstance sa_from_json(const Json& j, GeneralInstance& inst) {
  inst = instance_from_json(field(j, "instance"));
  SAInstance sa;
  sa.n = inst.n;
  sa.k = inst.k;
  sa.mode = parse_mode(field(j, "mode").get<std::string>());
  sa.c = int_from_json(field(j, "c"));
  sa.x = rat_vector_from_json(field(j, "x"));
  sa.m_tilde = int_matrix_from_json(field(j, "m_tilde"));
  sa.b1 = int_from_json(field(j, "b1"));
  sa.b2 = int_from_json(field(j, "b2"));
  sa.det_b1 = int_from_json(field(j, "det_b1"));
  sa.det_b2 = int_from_json(field(j, "det_b2"));
  if (sa.x.size() != sa.n || sa.m_tilde.rows() != sa.n || sa.m_tilde.cols() != sa.n)
    throw Error(ErrorKind::Parse, "SA instance dimensions do not match n");
  sa.perturbation = sub(sa.m_tilde, scale(bareiss_det_adj(inst.m).adj, sa.c));
  sa.trace.tie_bumped = j.value("tie_bumped", false);
  if (j.contains("trace"))
    for (const auto& e : j.at("trace"))
      sa.trace.records.push_back({field(e, "iteration").get<std::size_t>(), field(e, "shift").get<std::uint64_t>(),
                                  int_from_json(field(e, "det_b1")), int_from_json(field(e, "det_b2")),
                                  int_from_json(field(e, "max_entry")), int_from_json(field(e, "shift_bound")),
                                  e.value("bumps", 0u)});
  return sa;
}

Json answer_to_json(const OracleAnswer& a) {
  Json j;
  j["mode"] = std::string(to_string(a.mode));
  j["coefficients"] = to_json(IntVector(a.coefficients));
  Json vs = Json::array();
  for (const auto& v : a.vectors) vs.push_back(to_json(v));
  j["vectors"] = std::move(vs);
  j["achieved"] = to_json(a.achieved);
  j["optimal"] = a.optimal ? to_json(*a.optimal) : Json();
  j["certified"] = a.certified;
  j["nodes"] = a.nodes;
  j["candidates"] = a.candidates;
  return j;
}

Json reduction_to_json(const ReductionResult& r, const GeneralInstance& inst) {
  Json j;
  j["problem"] = r.problem;
  j["n"] = inst.n;
  j["k"] = to_json(inst.k);
  j["gamma"] = to_string(inst.gamma);
  j["norm"] = std::string(to_string(inst.norm));
  if (r.vectors.size() == 1) {
    j["v"] = to_json(r.vectors[0]);
    j["z0"] = to_json(r.z0[0]);
  } else {
    Json v = Json::array(), z = Json::array();
    for (std::size_t i = 0; i < r.vectors.size(); ++i) {
      v.push_back(to_json(r.vectors[i]));
      z.push_back(to_json(r.z0[i]));
    }
    j["v"] = std::move(v);
    j["z0"] = std::move(z);
  }
  j["achieved"] = to_json(r.achieved);
  j["certified"] = r.answer.certified;
  j["oracle"] = answer_to_json(r.answer);
  j["sa"] = {{"c", to_json(r.sa.c)}, {"x", to_json(r.sa.x)}, {"mode", std::string(to_string(r.sa.mode))}};
  return j;
}

Json report_to_json(const CheckReport& r) {
  auto obj = [](const Fields& f) {
    Json o = Json::object();
    for (const auto& [k, v] : f) o[k] = v;
    return o;
  };
  Json j;
  j["check"] = r.name;
  j["pass"] = r.pass;
  j["measured"] = obj(r.measured);
  j["bounds"] = obj(r.bounds);
  j["notes"] = r.notes;
  j["context"] = obj(r.context);
  return j;
}

Json histogram_to_json(const GapHistogram& h) {
  Json counts = Json::object();
  for (const auto& [x, c] : h.counts) counts[std::to_string(x)] = c;
  Json j;
  j["samples"] = h.samples;
  j["mean"] = to_json(h.mean());
  j["counts"] = std::move(counts);
  return j;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace salat
