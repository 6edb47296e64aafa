#pragma once

// Owner bundle for everything computed about one concrete group: element
// table, Cayley tables, conjugacy classes, subgroup lattice. Layers build
// lazily, each behind its own cap. Build what you need single-threaded,
// then share freely: all layers are immutable once constructed.

#include <optional>
#include <string>

#include "chebo/common.hpp"
#include "chebo/enumeration.hpp"
#include "chebo/lattice.hpp"

namespace chebo {

class GroupData {
 public:
  explicit GroupData(PermGroup g, Caps caps = {}, std::string label = "")
      : caps_(caps), label_(std::move(label)), group_(std::move(g)) {}

  const PermGroup& group() const { return group_; }
  const Caps& caps() const { return caps_; }
  const std::string& label() const { return label_; }

  const ElementTable& elements() {
    if (!et_) et_ = make_element_table(group_, caps_);
    return *et_;
  }

  const GroupTable& table() {
    if (!gt_) gt_ = make_group_table(elements(), group_, caps_);
    return *gt_;
  }

  const ConjClassTable& classes() {
    if (!cc_) cc_ = conjugacy_classes(elements(), group_);
    return *cc_;
  }

  const Lattice& lattice() {
    if (!lat_) lat_ = build_lattice(elements(), table(), group_);
    return *lat_;
  }

  // PermGroup generated by a lattice record's stored generators.
  PermGroup subgroup_group(const SubgroupRecord& r) {
    const ElementTable& et = elements();
    std::vector<Perm> gens;
    for (int id : r.gens) gens.push_back(et.elems[static_cast<std::size_t>(id)]);
    PermGroup s(group_.degree(), std::move(gens));
    require(s.order() == BigInt(r.order()), errc::internal, "subgroup record order mismatch");
    return s;
  }

 private:
  Caps caps_;
  std::string label_;
  PermGroup group_;
  std::optional<ElementTable> et_;
  std::optional<GroupTable> gt_;
  std::optional<ConjClassTable> cc_;
  std::optional<Lattice> lat_;
};

}  // namespace chebo
