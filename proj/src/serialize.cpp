#include "tdga/serialize.hpp"

#include "tdga/errors.hpp"

namespace tdga {

Json to_json(const NcPoly& x) {
  Json out = Json::array();
  for (const auto& [w, c] : x.terms()) {
    Json word = Json::array();
    for (const auto& g : w) word.push_back(g.name());
    out.push_back(Json{{"coeff", to_text(c)}, {"word", std::move(word)}});
  }
  return out;
}

NcPoly ncpoly_from_json(const Json& j, RingDescriptor ring) {
  if (!j.is_array()) throw DomainError("NcPoly JSON must be an array");
  NcPoly out(ring);
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff") || !term.contains("word")) {
      throw DomainError("NcPoly JSON term needs 'coeff' and 'word'");
    }
    Word w;
    for (const auto& name : term.at("word")) w.push_back(parse_gen(name.get<std::string>()));
    out.add_term(w, parse_coeff(term.at("coeff").get<std::string>(), ring));
  }
  return out;
}

Json to_json(const NcMatrix& m) {
  Json out = Json::array();
  for (int i = 1; i <= m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= m.dim(); ++j) row.push_back(to_json(m.at(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

NcMatrix ncmatrix_from_json(const Json& j, RingDescriptor ring) {
  if (!j.is_array()) throw DomainError("matrix JSON must be an array of rows");
  const int n = static_cast<int>(j.size());
  NcMatrix m(n, ring);
  for (int i = 1; i <= n; ++i) {
    const Json& row = j.at(i - 1);
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw DomainError("matrix JSON must be square");
    }
    for (int k = 1; k <= n; ++k) m.at(i, k) = ncpoly_from_json(row.at(k - 1), ring);
  }
  return m;
}

Json to_json(const FilteredDGA& dga) {
  Json gens = Json::array();
  Json diff = Json::object();
  for (const auto& g : dga.generators) {
    gens.push_back(Json{{"name", g.name()}, {"degree", g.degree()}});
    diff[g.name()] = to_json(dga.d(g));
  }
  return Json{{"braid", to_string(dga.braid)},
              {"strands", dga.strands()},
              {"components", dga.components.count},
              {"ring", Json{{"r", dga.ring.components}, {"uv_mode", to_string(dga.ring.uv_mode)}}},
              {"generators", std::move(gens)},
              {"differential", std::move(diff)},
              {"provenance", to_string(dga.provenance)}};
}

FilteredDGA dga_from_json(const Json& j) {
  try {
    FilteredDGA dga;
    dga.braid = parse_braid(j.at("braid").get<std::string>(), j.at("strands").get<int>());
    dga.components = link_components(dga.braid);
    if (j.at("components").get<int>() != dga.components.count) {
      throw DomainError("DGA JSON: component count does not match the braid");
    }
    const Json& ring = j.at("ring");
    dga.ring = RingDescriptor{ring.at("r").get<int>(), 0,
                              parse_uv_mode(ring.at("uv_mode").get<std::string>())};
    dga.provenance = parse_provenance(j.at("provenance").get<std::string>());
    const Json& diff = j.at("differential");
    for (const auto& entry : j.at("generators")) {
      GenId g = parse_gen(entry.at("name").get<std::string>());
      if (entry.at("degree").get<int>() != g.degree()) {
        throw DomainError("DGA JSON: wrong degree for " + g.name());
      }
      dga.generators.push_back(g);
      dga.differential.emplace(g, ncpoly_from_json(diff.at(g.name()), dga.ring));
    }
    if (diff.size() != dga.generators.size()) {
      throw DomainError("DGA JSON: differential keys do not match the generator list");
    }
    return dga;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("DGA JSON: ") + e.what());
  }
}

Json to_json(const UnitTableRow& row) {
  Json out{{"lambda", row.lambda}, {"mu", row.mu}};
  if (row.u) out["U"] = *row.u;
  if (row.v) out["V"] = *row.v;
  out["count"] = row.count;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tdga
