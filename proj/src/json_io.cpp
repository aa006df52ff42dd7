#include "dgk/json_io.hpp"

#include <sstream>

namespace dgk {

using nlohmann::json;

json payload_to_json(const GroupElement& g) {
  if (auto* t = std::get_if<TablePayload>(&g.payload))
    return json{{"type", "table"}, {"index", t->index}};
  if (auto* m = std::get_if<ModPairPayload>(&g.payload))
    return json{{"type", "modpair"}, {"a", m->a}, {"x", m->x}};
  if (auto* x = std::get_if<MatrixPayload>(&g.payload)) {
    json rows = json::array();
    for (int i = 0; i < x->m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < x->m.cols(); ++j) row.push_back(rat_str(x->m(i, j)));
      rows.push_back(row);
    }
    return json{{"type", "matrix"}, {"rows", rows}};
  }
  const auto& s = std::get<SemiPayload>(g.payload);
  return json{{"type", "semi"}, {"h", s.h}, {"k", s.k}};
}

GroupElement element_from_json(const AmbientGroup& group, const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "table") {
    auto* tg = dynamic_cast<const TableGroup*>(&group);
    if (!tg) throw DomainError("table payload for non-table group " + group.name());
    return tg->element(j.at("index").get<int>());
  }
  if (type == "modpair") {
    auto* mg = dynamic_cast<const ModRingGroup*>(&group);
    if (!mg) throw DomainError("modpair payload for group " + group.name());
    return mg->element(j.at("a").get<long>(), j.at("x").get<long>());
  }
  if (type == "matrix") {
    auto* xg = dynamic_cast<const MatrixGroup*>(&group);
    if (!xg) throw DomainError("matrix payload for group " + group.name());
    const auto& rows = j.at("rows");
    int n = static_cast<int>(rows.size());
    QMatrix m(n, static_cast<int>(rows.at(0).size()));
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < m.cols(); ++c)
        m(i, c) = parse_rat(rows.at(i).at(c).get<std::string>());
    return xg->element(std::move(m));
  }
  if (type == "semi") {
    auto* sg = dynamic_cast<const SemidirectGroup*>(&group);
    if (!sg) throw DomainError("semi payload for group " + group.name());
    return sg->element(j.at("h").get<int>(), j.at("k").get<int>());
  }
  throw DomainError("unknown payload type '" + type + "'");
}

json groupoid_element_to_json(const GroupoidElement& x) {
  return json{{"h", payload_to_json(x.h)}, {"k", payload_to_json(x.k)}};
}

GroupoidElement groupoid_element_from_json(const AmbientGroup& group, const json& j) {
  return GroupoidElement{element_from_json(group, j.at("h")),
                         element_from_json(group, j.at("k"))};
}

json fragment_to_json(const Fragment& frag) {
  json elems = json::array();
  for (const auto& x : frag.elements()) elems.push_back(groupoid_element_to_json(x));
  json comp = json::array();
  const auto& v = frag.elements();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      auto p = frag.compose_in(v[i], v[j]);
      if (!p || !frag.contains(*p)) continue;
      comp.push_back(json::array({i, j, static_cast<std::size_t>(frag.index_of(*p))}));
    }
  return json{{"structure", structure_name(frag.tag())},
              {"closure", frag.closed() ? "closed" : "window"},
              {"group", frag.pair().group().name()},
              {"elements", elems},
              {"composability", comp}};
}

std::vector<GroupoidElement> fragment_elements_from_json(const AmbientGroup& group,
                                                         const json& j) {
  std::vector<GroupoidElement> out;
  for (const auto& e : j.at("elements")) out.push_back(groupoid_element_from_json(group, e));
  return out;
}

std::string fragment_to_dot(const Fragment& frag) {
  const AdmissiblePair& p = frag.pair();
  std::map<std::string, int> unit_ids;
  std::ostringstream body;
  auto unit_id = [&](const GroupoidElement& u) {
    auto [it, fresh] = unit_ids.emplace(u.key(), static_cast<int>(unit_ids.size()));
    if (fresh)
      body << "  u" << it->second << " [shape=circle, label=\"" << u.h.key() << "|"
           << u.k.key() << "\"];\n";
    return it->second;
  };
  std::ostringstream edges;
  for (const auto& x : frag.elements()) {
    int src = unit_id(source_of(p, frag.tag(), x));
    int dst = unit_id(range_of(p, frag.tag(), x));
    edges << "  u" << src << " -> u" << dst << " [label=\"(" << x.h.key() << ","
          << x.k.key() << ")\"];\n";
  }
  std::ostringstream out;
  out << "digraph fragment {\n  rankdir=LR;\n" << body.str() << edges.str() << "}\n";
  return out.str();
}

json conv_to_json(const ConvElement& f) {
  json terms = json::array();
  for (const auto& [key, hv] : f.support())
    terms.push_back({{"element", groupoid_element_to_json(hv.first)},
                     {"re", rat_str(hv.second.re)},
                     {"im", rat_str(hv.second.im)}});
  return json{{"structure", structure_name(f.fragment().tag())}, {"terms", terms}};
}

ConvElement conv_from_json(std::shared_ptr<const Fragment> frag, const json& j) {
  ConvElement out(frag);
  const AmbientGroup& g = frag->pair().group();
  for (const auto& t : j.at("terms")) {
    GroupoidElement x = groupoid_element_from_json(g, t.at("element"));
    out.set(x, GQ(parse_rat(t.at("re").get<std::string>()),
                  parse_rat(t.at("im").get<std::string>())));
  }
  return out;
}

}  // namespace dgk
