#include "titscone/groupoid.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace titscone {

std::optional<unsigned> GroupoidPresentation::find_generator(NodeSet source, unsigned a) const {
  for (unsigned i = 0; i < generators.size(); ++i)
    if (generators[i].source == source && generators[i].a == a) return i;
  return std::nullopt;
}

std::string GroupoidPresentation::to_json(const CoxeterDiagram& diagram) const {
  nlohmann::json j;
  j["kind"] = kind == Kind::coxeter ? "coxeter" : "artin";
  auto set_json = [&diagram](NodeSet s) {
    auto arr = nlohmann::json::array();
    for (unsigned i : s) arr.push_back(diagram.name(i));
    return arr;
  };
  auto word_json = [&diagram](const std::vector<unsigned>& w) {
    auto arr = nlohmann::json::array();
    for (unsigned i : w) arr.push_back(diagram.name(i));
    return arr;
  };
  j["base"] = set_json(base);
  j["complete"] = complete;
  j["indeterminate_pairs"] = indeterminate_pairs;
  auto objs = nlohmann::json::array();
  for (NodeSet o : objects) objs.push_back(set_json(o));
  j["objects"] = std::move(objs);
  auto gens = nlohmann::json::array();
  for (const auto& g : generators) {
    nlohmann::json gj;
    gj["source"] = set_json(g.source);
    gj["a"] = diagram.name(g.a);
    gj["target"] = set_json(g.target);
    gj["payload"] = word_json(g.payload.word());
    gens.push_back(std::move(gj));
  }
  j["generators"] = std::move(gens);
  auto rels = nlohmann::json::array();
  for (const auto& r : relations) {
    nlohmann::json rj;
    rj["lhs"] = r.lhs;
    rj["rhs"] = r.rhs;
    rels.push_back(std::move(rj));
  }
  j["relations"] = std::move(rels);
  return j.dump(2);
}

FinitePresentation GroupPresentation::finite_presentation() const {
  FinitePresentation fp;
  fp.generator_count = static_cast<unsigned>(names.size());
  fp.relators = relators;
  return fp;
}

std::string GroupPresentation::to_gap() const {
  std::ostringstream os;
  os << "F := FreeGroup(";
  if (names.empty()) os << " 0";
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : " ") << '"' << names[i] << '"';
  os << " );\n";
  os << "G := F / [";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    os << (r ? ", " : " ");
    if (relators[r].empty()) {
      os << "One(F)";
      continue;
    }
    for (std::size_t k = 0; k < relators[r].size(); ++k) {
      int letter = relators[r][k];
      if (k) os << "*";
      os << "F." << std::abs(letter);
      if (letter < 0) os << "^-1";
    }
  }
  os << " ];\n";
  return os.str();
}

std::string GroupPresentation::to_json() const {
  nlohmann::json j;
  j["generators"] = names;
  j["relators"] = relators;
  auto imgs = nlohmann::json::array();
  for (const auto& g : images) {
    auto arr = nlohmann::json::array();
    for (unsigned i : g.word()) arr.push_back(i);
    imgs.push_back(std::move(arr));
  }
  j["images"] = std::move(imgs);
  return j.dump(2);
}

SpanningTree groupoid_spanning_tree(const GroupoidPresentation& pres) {
  SpanningTree tree;
  tree.in_tree.assign(pres.generators.size(), false);
  tree.path_from_base.assign(pres.objects.size(), {});

  auto object_index = [&pres](NodeSet s) -> int {
    for (unsigned i = 0; i < pres.objects.size(); ++i)
      if (pres.objects[i] == s) return static_cast<int>(i);
    return -1;
  };
  int base_idx = object_index(pres.base);
  if (base_idx < 0) throw InternalError("groupoid_spanning_tree: base object missing");

  std::vector<bool> visited(pres.objects.size(), false);
  visited[base_idx] = true;
  std::deque<int> queue{base_idx};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (unsigned g = 0; g < pres.generators.size(); ++g) {
      if (pres.generators[g].source != pres.objects[cur]) continue;
      int tgt = object_index(pres.generators[g].target);
      if (tgt < 0) throw InternalError("groupoid_spanning_tree: target object missing");
      if (visited[tgt]) continue;
      visited[tgt] = true;
      tree.in_tree[g] = true;
      tree.path_from_base[tgt] = tree.path_from_base[cur];
      tree.path_from_base[tgt].push_back(g);
      queue.push_back(tgt);
    }
  }
  for (bool v : visited)
    if (!v) throw ValidationError("vertex_group_presentation: presentation is not connected");
  return tree;
}

GroupPresentation vertex_group_presentation(const GroupoidPresentation& pres) {
  return vertex_group_data(pres).group;
}

VertexGroupData vertex_group_data(const GroupoidPresentation& pres) {
  SpanningTree tree = groupoid_spanning_tree(pres);

  // Pair each tree arrow with its reverse arrow (Coxeter kind only): both
  // directions of a tree adjacency rewrite to the identity.
  std::vector<bool> kills(pres.generators.size(), false);
  if (pres.kind == GroupoidPresentation::Kind::coxeter) {
    for (unsigned g = 0; g < pres.generators.size(); ++g) {
      if (!tree.in_tree[g]) continue;
      kills[g] = true;
      auto partner = pres.find_generator(pres.generators[g].target, pres.generators[g].back_a);
      if (partner) kills[*partner] = true;
    }
  } else {
    for (unsigned g = 0; g < pres.generators.size(); ++g) kills[g] = tree.in_tree[g];
  }

  // group letter per surviving arrow; for Coxeter kind an arrow and its
  // reverse share one letter, the reverse mapping to the inverse
  GroupPresentation out;
  std::vector<int> letter(pres.generators.size(), 0);  // signed letter or 0 for identity
  for (unsigned g = 0; g < pres.generators.size(); ++g) {
    if (kills[g] || letter[g] != 0) continue;
    int fresh = static_cast<int>(out.names.size()) + 1;
    letter[g] = fresh;
    out.names.push_back("x" + std::to_string(fresh));
    out.images.push_back(pres.generators[g].payload);  // adjusted below via tree conjugation
    if (pres.kind == GroupoidPresentation::Kind::coxeter) {
      auto partner = pres.find_generator(pres.generators[g].target, pres.generators[g].back_a);
      if (partner && *partner != g && letter[*partner] == 0) letter[*partner] = -fresh;
    }
  }

  // tree-conjugated image of each surviving generator in W
  const CoxeterContext* ctx = nullptr;
  for (const auto& g : pres.generators) {
    ctx = &g.payload.context();
    break;
  }
  auto object_index = [&pres](NodeSet s) -> unsigned {
    for (unsigned i = 0; i < pres.objects.size(); ++i)
      if (pres.objects[i] == s) return i;
    throw InternalError("vertex_group_presentation: object lookup failed");
  };
  if (ctx != nullptr) {
    auto path_product = [&](unsigned obj) {
      GroupElement p = ctx->identity_element();
      for (unsigned g : tree.path_from_base[obj]) p = p * pres.generators[g].payload;
      return p;
    };
    for (unsigned g = 0; g < pres.generators.size(); ++g) {
      if (letter[g] <= 0) continue;
      GroupElement to_src = path_product(object_index(pres.generators[g].source));
      GroupElement from_tgt = path_product(object_index(pres.generators[g].target));
      out.images[static_cast<unsigned>(letter[g]) - 1] =
          to_src * pres.generators[g].payload * from_tgt.inverse();
    }
  }

  // rewrite relations: lhs . rhs^-1 with letters substituted
  auto append_word = [&letter](std::vector<int>& relator, const std::vector<unsigned>& word,
                               bool invert) {
    if (!invert) {
      for (unsigned g : word)
        if (letter[g] != 0) relator.push_back(letter[g]);
    } else {
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        if (letter[*it] != 0) relator.push_back(-letter[*it]);
    }
  };
  for (const auto& rel : pres.relations) {
    std::vector<int> relator;
    append_word(relator, rel.lhs, false);
    append_word(relator, rel.rhs, true);
    // free cancellation
    std::vector<int> reduced;
    for (int l : relator) {
      if (!reduced.empty() && reduced.back() == -l) reduced.pop_back();
      else reduced.push_back(l);
    }
    if (!reduced.empty()) out.relators.push_back(std::move(reduced));
  }
  VertexGroupData data;
  data.group = std::move(out);
  data.tree = std::move(tree);
  data.letter = std::move(letter);
  return data;
}

GroupPresentation tietze_simplify(const GroupPresentation& pres, unsigned max_rounds) {
  GroupPresentation cur = pres;
  for (unsigned round = 0; round < max_rounds; ++round) {
    // find a relator in which some generator appears exactly once
    int target_rel = -1, target_gen = 0;
    std::size_t best_len = static_cast<std::size_t>(-1);
    for (std::size_t r = 0; r < cur.relators.size(); ++r) {
      for (int letter : cur.relators[r]) {
        unsigned g = static_cast<unsigned>(std::abs(letter));
        unsigned count = 0;
        for (int l : cur.relators[r])
          if (static_cast<unsigned>(std::abs(l)) == g) ++count;
        if (count == 1 && cur.relators[r].size() < best_len) {
          best_len = cur.relators[r].size();
          target_rel = static_cast<int>(r);
          target_gen = letter;
        }
      }
    }
    if (target_rel < 0) break;

    // solve relator for the generator: g = replacement word
    const auto& rel = cur.relators[target_rel];
    unsigned gen = static_cast<unsigned>(std::abs(target_gen));
    std::size_t pos = 0;
    while (static_cast<unsigned>(std::abs(rel[pos])) != gen) ++pos;
    // relator = A g^e B = 1  =>  g^e = A^-1 B^-1  =>  g = (A^-1 B^-1)^(1/e)
    std::vector<int> replacement;
    auto push_inv = [&replacement](const std::vector<int>& w) {
      for (auto it = w.rbegin(); it != w.rend(); ++it) replacement.push_back(-*it);
    };
    std::vector<int> A(rel.begin(), rel.begin() + pos);
    std::vector<int> B(rel.begin() + pos + 1, rel.end());
    push_inv(A);
    push_inv(B);
    if (rel[pos] < 0) {
      // g^-1 = A^-1 B^-1  =>  g = B A
      replacement.clear();
      replacement.insert(replacement.end(), B.begin(), B.end());
      replacement.insert(replacement.end(), A.begin(), A.end());
    }

    // substitute and drop the generator
    GroupPresentation next;
    std::vector<int> remap(cur.names.size() + 1, 0);
    for (unsigned g = 1; g <= cur.names.size(); ++g) {
      if (g == gen) continue;
      remap[g] = static_cast<int>(next.names.size()) + 1;
      next.names.push_back(cur.names[g - 1]);
      next.images.push_back(cur.images.empty() ? GroupElement() : cur.images[g - 1]);
    }
    auto substitute = [&](const std::vector<int>& word) {
      std::vector<int> out;
      auto emit = [&out](int l) {
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
      };
      for (int l : word) {
        unsigned g = static_cast<unsigned>(std::abs(l));
        if (g != gen) {
          emit(l > 0 ? remap[g] : -remap[g]);
          continue;
        }
        if (l > 0)
          for (int r : replacement) emit(r > 0 ? remap[std::abs(r)] : -remap[std::abs(r)]);
        else
          for (auto it = replacement.rbegin(); it != replacement.rend(); ++it)
            emit(*it > 0 ? -remap[std::abs(*it)] : remap[std::abs(*it)]);
      }
      return out;
    };
    for (std::size_t r = 0; r < cur.relators.size(); ++r) {
      if (static_cast<int>(r) == target_rel) continue;
      std::vector<int> w = substitute(cur.relators[r]);
      if (!w.empty()) next.relators.push_back(std::move(w));
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace titscone
