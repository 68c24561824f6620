#include "tgp/deduction.hpp"

#include <algorithm>

namespace tgp {

namespace {

enum class Kind { Node, Corr, Edge };

struct Item {
  Kind kind;
  std::string id;
  std::string key; // side + type, the compatibility class
  std::string a, b; // endpoints or anchors
};

std::vector<Item> items_of(const TripleGraph &t) {
  std::vector<Item> out;
  for (const auto &[id, type] : t.source.nodes())
    out.push_back({Kind::Node, id, "s/" + type, "", ""});
  for (const auto &[id, type] : t.target.nodes())
    out.push_back({Kind::Node, id, "t/" + type, "", ""});
  for (const auto &[id, k] : t.corr)
    out.push_back({Kind::Corr, id, "c/" + k.type, k.source, k.target});
  for (const auto &[id, e] : t.source.edges())
    out.push_back({Kind::Edge, id, "es/" + e.type, e.source, e.target});
  for (const auto &[id, e] : t.target.edges())
    out.push_back({Kind::Edge, id, "et/" + e.type, e.source, e.target});
  return out;
}

class Search {
public:
  Search(const TripleGraph &t1, const TripleGraph &t2) : items1_(items_of(t1)) {
    for (const auto &it : items_of(t2)) {
      by_key_[it.key].push_back(it);
      avail_[it.key]++;
    }
    for (const auto &it : items1_)
      rem_[it.key]++;
  }

  std::vector<IdMap> run() {
    step(0);
    return best_ == 0 ? std::vector<IdMap>{} : found_;
  }

private:
  std::size_t bound() const {
    std::size_t b = 0;
    for (const auto &[key, n] : rem_) {
      auto it = avail_.find(key);
      b += std::min(n, it == avail_.end() ? 0 : it->second);
    }
    return b;
  }

  void record() {
    if (map_.size() > best_) {
      best_ = map_.size();
      found_.clear();
    }
    if (map_.size() == best_)
      found_.push_back(map_);
  }

  void step(std::size_t i) {
    if (map_.size() + bound() < best_)
      return;
    if (i == items1_.size()) {
      record();
      return;
    }
    const Item &x = items1_[i];
    rem_[x.key]--;
    const std::string *ia = nullptr, *ib = nullptr;
    bool placeable = true;
    if (x.kind != Kind::Node) {
      auto fa = map_.find(x.a), fb = map_.find(x.b);
      placeable = fa != map_.end() && fb != map_.end();
      if (placeable) {
        ia = &fa->second;
        ib = &fb->second;
      }
    }
    if (placeable) {
      for (const Item &c : by_key_[x.key]) {
        if (used_.count(c.id))
          continue;
        if (x.kind != Kind::Node && (c.a != *ia || c.b != *ib))
          continue;
        map_.emplace(x.id, c.id);
        used_.insert(c.id);
        avail_[x.key]--;
        step(i + 1);
        avail_[x.key]++;
        used_.erase(c.id);
        map_.erase(x.id);
      }
    }
    step(i + 1);
    rem_[x.key]++;
  }

  std::vector<Item> items1_;
  std::map<std::string, std::vector<Item>> by_key_;
  std::map<std::string, std::size_t> avail_, rem_;
  IdMap map_;
  IdSet used_;
  std::size_t best_ = 0;
  std::vector<IdMap> found_;
};

IdMap canonical(const IdMap &phi, const std::vector<IdMap> &aut1, const std::vector<IdMap> &aut2) {
  IdMap best = phi;
  for (const auto &a : aut1)
    for (const auto &b : aut2) {
      IdMap cand;
      for (const auto &[x, y] : phi)
        cand.emplace(a.at(x), b.at(y));
      if (cand < best)
        best = std::move(cand);
    }
  return best;
}

} // namespace

std::vector<MioSpan> mi(const TripleGraph &t1, const TripleGraph &t2) {
  std::vector<IdMap> maps = Search(t1, t2).run();
  if (maps.empty())
    return {};
  std::vector<IdMap> aut1, aut2;
  for (const auto &a : automorphisms(t1))
    aut1.push_back(unified(a));
  for (const auto &b : automorphisms(t2))
    aut2.push_back(unified(b));
  std::set<IdMap> reps;
  for (const auto &phi : maps)
    reps.insert(canonical(phi, aut1, aut2));
  std::vector<MioSpan> out;
  for (const auto &phi : reps) {
    IdSet ids;
    for (const auto &[x, _] : phi)
      ids.insert(x);
    MioSpan s;
    s.apex = subtriple(t1, ids);
    s.left = identity(s.apex);
    s.right = split(phi, s.apex);
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace tgp
