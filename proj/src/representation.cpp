#include "tca/representation.hpp"

#include <algorithm>

#include "tca/errors.hpp"

namespace tca {

bool DiagPartition::related(int i, int j) const {
  if (i == j) return true;
  if (i < 0 || j < 0 || i >= bound || j >= bound) return false;
  return leader[static_cast<std::size_t>(i)] == leader[static_cast<std::size_t>(j)];
}

int DiagPartition::block_of(int i) const {
  if (i < 0 || i >= bound) return i;
  return leader[static_cast<std::size_t>(i)];
}

std::vector<std::vector<int>> DiagPartition::blocks() const {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < bound; ++i) {
    if (leader[static_cast<std::size_t>(i)] != i) continue;
    std::vector<int> block;
    for (int j = 0; j < bound; ++j)
      if (leader[static_cast<std::size_t>(j)] == i) block.push_back(j);
    out.push_back(std::move(block));
  }
  return out;
}

DiagPartition diag_partition(const ChainState& chain, int bound) {
  if (bound < 1) throw PreconditionError("diag_partition needs a positive bound");
  DiagPartition part;
  part.bound = bound;
  part.leader.resize(static_cast<std::size_t>(bound));
  for (int i = 0; i < bound; ++i) part.leader[static_cast<std::size_t>(i)] = i;
  const BaseSpace& B = chain.base();
  for (int i = 0; i < bound; ++i)
    for (int j = i + 1; j < bound; ++j) {
      if (!chain.contains(B.diagonal(i, j))) continue;
      int li = part.leader[static_cast<std::size_t>(i)];
      int lj = part.leader[static_cast<std::size_t>(j)];
      if (li == lj) continue;
      int keep = std::min(li, lj), drop = std::max(li, lj);
      for (int v = 0; v < bound; ++v)
        if (part.leader[static_cast<std::size_t>(v)] == drop)
          part.leader[static_cast<std::size_t>(v)] = keep;
    }
  return part;
}

Representation::Representation(ChainState chain, CylinderElement seed, int diag_bound)
    : chain_(std::move(chain)), seed_(std::move(seed)), diag_bound_(diag_bound) {}

bool Representation::member(const CylinderElement& x, const FiniteTransformation& tau) {
  return chain_.membership(base().substitute(tau, x), true) == Membership::in;
}

Representation build_representation(const BaseSpace& base, const CylinderElement& seed,
                                    long steps, const ScheduleOptions& opt) {
  if (seed.is_zero()) throw PreconditionError("representation seed must be nonzero");
  ChainState chain = run_schedule(base, seed, TypeFamily{}, steps, opt);
  return Representation(std::move(chain), seed);
}

bool check_well_defined(Representation& rep, const CylinderElement& x,
                        const FiniteTransformation& sigma, const FiniteTransformation& tau) {
  std::vector<int> coords(x.support().begin(), x.support().end());
  for (auto [k, v] : sigma.moved()) {
    coords.push_back(k);
    (void)v;
  }
  for (auto [k, v] : tau.moved()) {
    coords.push_back(k);
    (void)v;
  }
  int bound = 1;
  for (int c : coords) bound = std::max(bound, std::max(sigma(c), tau(c)) + 1);
  auto part = rep.partition(bound);
  for (int c : coords)
    if (!part.related(sigma(c), tau(c)))
      throw PreconditionError("transformations are not blockwise equal at coordinate " +
                              std::to_string(c));
  return rep.member(x, sigma) == rep.member(x, tau);
}

int InteriorWitnessFamily::find(const CylinderElement& term, int coord) const {
  for (std::size_t t = 0; t < tables.size(); ++t)
    if (tables[t].coord == coord && tables[t].term == term) return static_cast<int>(t);
  return -1;
}

namespace {

WitnessTable make_table(Representation& rep, const CylinderElement& term, int coord,
                        int k_bound) {
  WitnessTable table;
  table.term = term;
  table.coord = coord;
  const BaseSpace& B = rep.base();
  auto opened = B.interior(coord, term);
  for (int k = 0; k < k_bound; ++k)
    if (rep.member(opened, FiniteTransformation::replace(coord, k))) table.members.push_back(k);
  return table;
}

}  // namespace

InteriorWitnessFamily interior_witnesses(Representation& rep,
                                         const std::vector<CylinderElement>& terms,
                                         int index_bound, int k_bound) {
  InteriorWitnessFamily family;
  family.k_bound = k_bound;
  for (const auto& p : terms)
    for (int i = 0; i < index_bound; ++i)
      if (family.find(p, i) < 0) family.tables.push_back(make_table(rep, p, i, k_bound));
  return family;
}

bool InteriorRepReport::all_agree() const {
  for (const auto& r : rows)
    if (!r.agree()) return false;
  return true;
}

InteriorRepReport verify_interior_rep(Representation& rep, InteriorWitnessFamily q,
                                      const CylinderElement& p, int i,
                                      const std::vector<FiniteTransformation>& taus) {
  InteriorRepReport report;
  const BaseSpace& B = rep.base();

  // the table each sampled transformation calls for: the term with the
  // off-i part already substituted in
  for (const auto& tau : taus) {
    auto off_i = tau.with(i, i);
    auto term = B.substitute(off_i, p);
    if (q.find(term, i) < 0) {
      q.tables.push_back(make_table(rep, term, i, q.k_bound));
      ++report.tables_added;
    }
  }

  for (const auto& tau : taus) {
    InteriorRepCheck row;
    row.tau = tau;
    row.image_side = rep.member(B.interior(i, p), tau);

    int part_bound = std::max(q.k_bound, tau(i) + 1);
    auto part = rep.partition(part_bound);
    for (std::size_t t = 0; t < q.tables.size() && !row.witness_side; ++t) {
      const auto& table = q.tables[t];
      bool holds_mapped_index = false;
      for (int k : table.members)
        if (part.related(k, tau(i))) {
          holds_mapped_index = true;
          break;
        }
      if (!holds_mapped_index) continue;
      bool inside = true;
      for (int u : table.members)
        if (!rep.member(p, tau.with(i, u))) {
          inside = false;
          break;
        }
      if (inside) {
        row.witness_side = true;
        row.witness_table = static_cast<int>(t);
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

HomomorphismReport verify_homomorphism(Representation& rep,
                                       const std::vector<CylinderElement>& terms,
                                       const std::vector<FiniteTransformation>& taus,
                                       const HomomorphismOptions& opt) {
  HomomorphismReport report;
  const BaseSpace& B = rep.base();

  auto fresh_coordinate = [&]() {
    int u = 0;
    while (rep.chain().support_coords().count(u) || rep.chain().used_witnesses().count(u)) ++u;
    return u;
  };

  for (const auto& tau : taus) {
    for (std::size_t a = 0; a < terms.size(); ++a) {
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        ++report.meet_checks;
        bool lhs = rep.member(B.meet(terms[a], terms[b]), tau);
        bool rhs = rep.member(terms[a], tau) && rep.member(terms[b], tau);
        if (lhs != rhs)
          report.failures.push_back("meet tau=" + tau.to_text() + " a=" + terms[a].to_text() +
                                    " b=" + terms[b].to_text());
      }
      ++report.complement_checks;
      bool lc = rep.member(B.complement(terms[a]), tau);
      bool rc = !rep.member(terms[a], tau);
      if (lc != rc)
        report.failures.push_back("complement tau=" + tau.to_text() + " x=" + terms[a].to_text());
    }

    for (int i = 0; i < opt.diag_bound; ++i)
      for (int j = i + 1; j < opt.diag_bound; ++j) {
        ++report.diag_checks;
        bool lhs = rep.member(B.diagonal(i, j), tau);
        int bound = std::max(tau(i), tau(j)) + 1;
        bool rhs = rep.partition(bound).related(tau(i), tau(j));
        if (lhs != rhs)
          report.failures.push_back("diagonal tau=" + tau.to_text() + " i=" + std::to_string(i) +
                                    " j=" + std::to_string(j));
      }

    for (const auto& x : terms)
      for (int k = 0; k < opt.cyl_bound; ++k) {
        ++report.cyl_checks;
        bool lhs = rep.member(B.cylindrify(k, x), tau);
        bool rhs = false;
        for (int u = 0; u < opt.witness_window && !rhs; ++u)
          rhs = rep.member(x, tau.with(k, u));
        if (!rhs) rhs = rep.member(x, tau.with(k, fresh_coordinate()));
        if (lhs != rhs)
          report.failures.push_back("cylindrify tau=" + tau.to_text() + " k=" + std::to_string(k) +
                                    " x=" + x.to_text());
      }
  }
  return report;
}

}  // namespace tca
