// Copyright 2026 The ADSeqGAN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adseqgan/chem/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>

#include "adseqgan/chem/elements.hpp"

namespace adseqgan::chem {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> tokenize(std::string_view smiles) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = smiles.size();
  auto push = [&](TokenKind kind, std::size_t len, int label = -1) {
    tokens.push_back(Token{kind, std::string(smiles.substr(i, len)), label, i});
    i += len;
  };
  while (i < n) {
    const char c = smiles[i];
    const char next = i + 1 < n ? smiles[i + 1] : '\0';
    switch (c) {
      case '[': {
        const std::size_t close = smiles.find(']', i);
        if (close == std::string_view::npos) {
          throw SmilesError(Errc::SyntaxError, "unterminated bracket atom", static_cast<std::ptrdiff_t>(i));
        }
        for (std::size_t k = i + 1; k < close; ++k) {
          const char b = smiles[k];
          if (!(std::isalnum(static_cast<unsigned char>(b)) || b == '@' || b == '+' || b == '-' || b == ':')) {
            throw SmilesError(Errc::UnknownCharacter, std::string("'") + b + "' inside bracket atom",
                              static_cast<std::ptrdiff_t>(k));
          }
        }
        push(TokenKind::BracketAtom, close - i + 1);
        break;
      }
      case 'C':
        push(TokenKind::Atom, next == 'l' ? 2 : 1);
        break;
      case 'B':
        push(TokenKind::Atom, next == 'r' ? 2 : 1);
        break;
      case 'N': case 'O': case 'P': case 'S': case 'F': case 'I':
      case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
        push(TokenKind::Atom, 1);
        break;
      case '-': case '=': case '#': case ':': case '/': case '\\':
        push(TokenKind::Bond, 1);
        break;
      case '(':
        push(TokenKind::BranchOpen, 1);
        break;
      case ')':
        push(TokenKind::BranchClose, 1);
        break;
      case '.':
        push(TokenKind::Dot, 1);
        break;
      case '%':
        if (i + 2 < n && is_digit(smiles[i + 1]) && is_digit(smiles[i + 2])) {
          push(TokenKind::RingClosure, 3, (smiles[i + 1] - '0') * 10 + (smiles[i + 2] - '0'));
        } else {
          throw SmilesError(Errc::SyntaxError, "'%' must be followed by two digits", static_cast<std::ptrdiff_t>(i));
        }
        break;
      default:
        if (is_digit(c)) {
          push(TokenKind::RingClosure, 1, c - '0');
        } else {
          throw SmilesError(Errc::UnknownCharacter, std::string("'") + c + "'", static_cast<std::ptrdiff_t>(i));
        }
    }
  }
  return tokens;
}

std::string detokenize(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& t : tokens) out += t.text;
  return out;
}

std::vector<std::string> token_texts(std::string_view smiles) {
  std::vector<std::string> out;
  for (Token& t : tokenize(smiles)) out.push_back(std::move(t.text));
  return out;
}

namespace {

struct ProtoAtom {
  int z = 0;
  int charge = 0;
  bool aromatic = false;
  bool bracket = false;
  int hydrogens = -1;  // fixed for bracket atoms
  std::ptrdiff_t position = 0;
};

struct ProtoBond {
  int a = 0;
  int b = 0;
  int order = 1;  // 1, 2, 3 or 4 (aromatic)
};

ProtoAtom parse_bracket(const Token& tok) {
  const std::string_view body = std::string_view(tok.text).substr(1, tok.text.size() - 2);
  const auto pos = static_cast<std::ptrdiff_t>(tok.position);
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw SmilesError(Errc::SyntaxError, what + " in " + tok.text, pos + static_cast<std::ptrdiff_t>(i) + 1);
  };
  while (i < body.size() && is_digit(body[i])) ++i;  // isotope, ignored
  if (i >= body.size() || !std::isalpha(static_cast<unsigned char>(body[i]))) fail("missing element symbol");

  ProtoAtom atom;
  atom.bracket = true;
  atom.position = pos;
  std::string symbol;
  if (std::islower(static_cast<unsigned char>(body[i]))) {
    atom.aromatic = true;
    if (body.substr(i, 2) == "se" || body.substr(i, 2) == "as") {
      symbol = std::string(1, static_cast<char>(std::toupper(body[i]))) + body[i + 1];
      i += 2;
    } else {
      symbol = std::string(1, static_cast<char>(std::toupper(body[i])));
      i += 1;
    }
    if (symbol != "B" && symbol != "C" && symbol != "N" && symbol != "O" && symbol != "P" && symbol != "S" &&
        symbol != "Se" && symbol != "As") {
      throw SmilesError(Errc::UnknownElement, "no aromatic form for " + symbol, pos);
    }
  } else {
    symbol = std::string(1, body[i]);
    if (i + 1 < body.size() && std::islower(static_cast<unsigned char>(body[i + 1])) &&
        find_element(symbol + body[i + 1]) != nullptr) {
      symbol += body[i + 1];
      ++i;
    }
    ++i;
  }
  const Element* element = find_element(symbol);
  if (element == nullptr) throw SmilesError(Errc::UnknownElement, "unknown element " + symbol, pos);
  atom.z = element->atomic_number;

  // Chirality, discarded.
  while (i < body.size() && body[i] == '@') ++i;
  if (i + 1 < body.size() && (body.substr(i, 2) == "TH" || body.substr(i, 2) == "AL" ||
                              body.substr(i, 2) == "SP" || body.substr(i, 2) == "TB" || body.substr(i, 2) == "OH")) {
    i += 2;
    while (i < body.size() && is_digit(body[i])) ++i;
  }
  atom.hydrogens = 0;
  if (i < body.size() && body[i] == 'H') {
    ++i;
    atom.hydrogens = 1;
    if (i < body.size() && is_digit(body[i])) {
      atom.hydrogens = body[i] - '0';
      ++i;
    }
  }
  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    const char sign_char = body[i];
    const int sign = sign_char == '+' ? 1 : -1;
    ++i;
    int magnitude = 1;
    if (i < body.size() && is_digit(body[i])) {
      magnitude = body[i] - '0';
      ++i;
    } else {
      while (i < body.size() && body[i] == sign_char) {
        ++magnitude;
        ++i;
      }
    }
    atom.charge = sign * magnitude;
  }
  if (i < body.size() && body[i] == ':') {
    ++i;
    if (i >= body.size() || !is_digit(body[i])) fail("bad atom class");
    while (i < body.size() && is_digit(body[i])) ++i;
  }
  if (i != body.size()) fail("unexpected character");
  return atom;
}

ProtoAtom parse_organic(const Token& tok) {
  ProtoAtom atom;
  atom.position = static_cast<std::ptrdiff_t>(tok.position);
  std::string symbol = tok.text;
  if (std::islower(static_cast<unsigned char>(symbol[0]))) {
    atom.aromatic = true;
    symbol[0] = static_cast<char>(std::toupper(symbol[0]));
  }
  atom.z = find_element(symbol)->atomic_number;
  return atom;
}

int bond_symbol_order(char c) {
  switch (c) {
    case '=': return 2;
    case '#': return 3;
    case ':': return 4;
    default: return 1;  // '-', '/', '\'
  }
}

int lowest_valence(int z) {
  const Element& e = element_by_number(z);
  return e.valences.empty() ? 0 : e.valences.front();
}

// Electrons a ring atom donates to the ring's pi system, or nullopt if the
// atom cannot take part in a planar conjugated ring.
std::optional<int> pi_electrons(int atom, const std::vector<int>& ring, std::size_t ring_pos,
                                const std::vector<ProtoAtom>& atoms, const std::vector<ProtoBond>& bonds,
                                const std::vector<std::vector<std::pair<int, int>>>& adj,
                                const std::vector<bool>& aromatic_atom) {
  const ProtoAtom& a = atoms[static_cast<std::size_t>(atom)];
  switch (a.z) {
    case z::B: case z::C: case z::N: case z::O: case z::P: case z::S: case z::Se: break;
    default: return std::nullopt;
  }
  int doubles = 0;
  int partner = -1;
  for (auto [nb, bi] : adj[static_cast<std::size_t>(atom)]) {
    const int order = bonds[static_cast<std::size_t>(bi)].order;
    if (order == 3) return std::nullopt;
    if (order == 2) {
      ++doubles;
      partner = nb;
    }
  }
  if (doubles > 1) return std::nullopt;
  if (doubles == 1) {
    const std::size_t n = ring.size();
    const int prev = ring[(ring_pos + n - 1) % n];
    const int next = ring[(ring_pos + 1) % n];
    if (partner == prev || partner == next) return 1;
    if (aromatic_atom[static_cast<std::size_t>(partner)]) return 1;
    return 0;  // exocyclic double bond, e.g. ring C=O
  }
  const int connections = static_cast<int>(adj[static_cast<std::size_t>(atom)].size()) + a.hydrogens;
  switch (a.z) {
    case z::C:
      if (connections == 3 && a.charge == -1) return 2;
      if (connections == 3 && a.charge == 1) return 0;
      return std::nullopt;
    case z::N: case z::P:
      if (connections == 3 && a.charge == 0) return 2;
      if (connections == 2 && a.charge == -1) return 2;
      return std::nullopt;
    case z::O: case z::S: case z::Se:
      if (connections == 2 && a.charge == 0) return 2;
      return std::nullopt;
    case z::B:
      if (connections == 3 && a.charge == 0) return 0;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

class Kekulizer {
 public:
  Kekulizer(const std::vector<bool>& needs_pi, const std::vector<std::vector<std::pair<int, int>>>& pi_adj)
      : needs_pi_(needs_pi), adj_(pi_adj), match_(needs_pi.size(), -1), match_bond_(needs_pi.size(), -1) {}

  // Returns -1 on success, otherwise an atom that could not be matched.
  int run() {
    if (solve()) return -1;
    for (std::size_t i = 0; i < needs_pi_.size(); ++i) {
      if (needs_pi_[i] && match_[i] < 0) return static_cast<int>(i);
    }
    for (std::size_t i = 0; i < needs_pi_.size(); ++i) {
      if (needs_pi_[i]) return static_cast<int>(i);
    }
    return 0;
  }

  const std::vector<int>& matched_bonds() const { return match_bond_; }

 private:
  bool solve() {
    if (++steps_ > kBudget) return false;
    int best = -1;
    int best_options = 1 << 30;
    for (std::size_t i = 0; i < needs_pi_.size(); ++i) {
      if (!needs_pi_[i] || match_[i] >= 0) continue;
      int options = 0;
      for (auto [nb, bi] : adj_[i]) {
        if (match_[static_cast<std::size_t>(nb)] < 0) ++options;
      }
      if (options < best_options) {
        best_options = options;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) return true;
    if (best_options == 0) return false;
    const auto u = static_cast<std::size_t>(best);
    for (auto [nb, bi] : adj_[u]) {
      const auto v = static_cast<std::size_t>(nb);
      if (match_[v] >= 0) continue;
      match_[u] = nb;
      match_[v] = best;
      match_bond_[u] = match_bond_[v] = bi;
      if (solve()) return true;
      match_[u] = match_[v] = -1;
      match_bond_[u] = match_bond_[v] = -1;
      if (steps_ > kBudget) return false;
    }
    return false;
  }

  static constexpr long kBudget = 200000;
  const std::vector<bool>& needs_pi_;
  const std::vector<std::vector<std::pair<int, int>>>& adj_;
  std::vector<int> match_;
  std::vector<int> match_bond_;
  long steps_ = 0;
};

}  // namespace

MolecularGraph parse(const std::vector<Token>& tokens) {
  if (tokens.empty()) throw SmilesError(Errc::EmptyInput, "no tokens");

  std::vector<ProtoAtom> atoms;
  std::vector<ProtoBond> bonds;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, bond index)

  struct OpenRing {
    int atom;
    int order;  // 0 when unspecified
    std::ptrdiff_t position;
  };
  std::map<int, OpenRing> open_rings;
  std::vector<int> branch_stack;
  std::vector<std::size_t> branch_atom_count;
  int prev = -1;
  int pending = 0;  // bond order from an explicit symbol, 0 if none
  std::ptrdiff_t pending_pos = -1;

  auto add_bond = [&](int a, int b, int order, std::ptrdiff_t pos) {
    if (a == b) throw SmilesError(Errc::SyntaxError, "atom bonded to itself", pos, a);
    for (auto [nb, bi] : adj[static_cast<std::size_t>(a)]) {
      if (nb == b) throw SmilesError(Errc::SyntaxError, "duplicate bond", pos, a);
    }
    const ProtoAtom& pa = atoms[static_cast<std::size_t>(a)];
    const ProtoAtom& pb = atoms[static_cast<std::size_t>(b)];
    if (order == 0) order = pa.aromatic && pb.aromatic ? 4 : 1;
    if (order == 4 && !(pa.aromatic && pb.aromatic)) {
      throw SmilesError(Errc::SyntaxError, "aromatic bond between non-aromatic atoms", pos, a);
    }
    const int idx = static_cast<int>(bonds.size());
    bonds.push_back({a, b, order});
    adj[static_cast<std::size_t>(a)].emplace_back(b, idx);
    adj[static_cast<std::size_t>(b)].emplace_back(a, idx);
  };

  for (const Token& tok : tokens) {
    const auto pos = static_cast<std::ptrdiff_t>(tok.position);
    switch (tok.kind) {
      case TokenKind::Atom:
      case TokenKind::BracketAtom: {
        atoms.push_back(tok.kind == TokenKind::Atom ? parse_organic(tok) : parse_bracket(tok));
        adj.emplace_back();
        const int idx = static_cast<int>(atoms.size()) - 1;
        if (prev >= 0) {
          add_bond(prev, idx, pending, pos);
        } else if (pending != 0) {
          throw SmilesError(Errc::SyntaxError, "bond symbol without a preceding atom", pending_pos);
        }
        pending = 0;
        prev = idx;
        break;
      }
      case TokenKind::Bond:
        if (prev < 0 || pending != 0) throw SmilesError(Errc::SyntaxError, "misplaced bond symbol", pos);
        pending = bond_symbol_order(tok.text[0]);
        pending_pos = pos;
        break;
      case TokenKind::BranchOpen:
        if (prev < 0 || pending != 0) throw SmilesError(Errc::SyntaxError, "misplaced branch", pos);
        branch_stack.push_back(prev);
        branch_atom_count.push_back(atoms.size());
        break;
      case TokenKind::BranchClose:
        if (branch_stack.empty()) throw SmilesError(Errc::UnbalancedBranch, "')' without '('", pos);
        if (pending != 0) throw SmilesError(Errc::SyntaxError, "dangling bond symbol", pending_pos);
        if (branch_atom_count.back() == atoms.size()) throw SmilesError(Errc::SyntaxError, "empty branch", pos);
        prev = branch_stack.back();
        branch_stack.pop_back();
        branch_atom_count.pop_back();
        break;
      case TokenKind::RingClosure: {
        if (prev < 0) throw SmilesError(Errc::SyntaxError, "ring closure without an atom", pos);
        const auto it = open_rings.find(tok.ring_label);
        if (it == open_rings.end()) {
          open_rings.emplace(tok.ring_label, OpenRing{prev, pending, pos});
        } else {
          int order = pending;
          if (it->second.order != 0) {
            if (order != 0 && order != it->second.order) {
              throw SmilesError(Errc::SyntaxError, "conflicting ring-closure bond symbols", pos, -1, tok.ring_label);
            }
            order = it->second.order;
          }
          add_bond(it->second.atom, prev, order, pos);
          open_rings.erase(it);
        }
        pending = 0;
        break;
      }
      case TokenKind::Dot:
        if (prev < 0 || pending != 0) throw SmilesError(Errc::SyntaxError, "misplaced '.'", pos);
        if (!branch_stack.empty()) throw SmilesError(Errc::SyntaxError, "'.' inside a branch", pos);
        prev = -1;
        break;
      case TokenKind::ClassStart:
        throw SmilesError(Errc::SyntaxError, "class start token inside SMILES", pos);
    }
  }
  if (pending != 0) throw SmilesError(Errc::SyntaxError, "dangling bond symbol", pending_pos);
  if (!branch_stack.empty()) throw SmilesError(Errc::UnbalancedBranch, "unclosed '('", -1);
  if (!open_rings.empty()) {
    const auto& [label, ring] = *open_rings.begin();
    throw SmilesError(Errc::UnclosedRing, "ring bond " + std::to_string(label) + " never closed", ring.position,
                      ring.atom, label);
  }
  if (prev < 0) throw SmilesError(Errc::SyntaxError, "trailing '.'", -1);

  const std::size_t n = atoms.size();

  // Hydrogens on aromatic atoms and which of them need a double bond.
  std::vector<bool> needs_pi(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    ProtoAtom& a = atoms[i];
    if (!a.aromatic) continue;
    int sigma = 0;
    for (auto [nb, bi] : adj[i]) {
      const int order = bonds[static_cast<std::size_t>(bi)].order;
      sigma += order == 4 ? 1 : order;
    }
    if (!a.bracket) {
      const int d = lowest_valence(a.z);
      if (sigma + 1 <= d) {
        needs_pi[i] = true;
        a.hydrogens = d - sigma - 1;
      } else {
        a.hydrogens = 0;
      }
    } else {
      const std::vector<int> allowed = allowed_valences(element_by_number(a.z), a.charge);
      const int used = sigma + a.hydrogens;
      const auto it = std::find_if(allowed.begin(), allowed.end(), [&](int v) { return v >= used; });
      if (it == allowed.end()) {
        throw SmilesError(Errc::ValenceViolation, "valence exceeded on aromatic atom", a.position, static_cast<int>(i));
      }
      needs_pi[i] = *it > used;
    }
  }

  // Kekulize: pick a perfect matching on aromatic bonds between atoms that need one.
  {
    std::vector<std::vector<std::pair<int, int>>> pi_adj(n);
    for (std::size_t bi = 0; bi < bonds.size(); ++bi) {
      const ProtoBond& b = bonds[bi];
      if (b.order != 4) continue;
      if (needs_pi[static_cast<std::size_t>(b.a)] && needs_pi[static_cast<std::size_t>(b.b)]) {
        pi_adj[static_cast<std::size_t>(b.a)].emplace_back(b.b, static_cast<int>(bi));
        pi_adj[static_cast<std::size_t>(b.b)].emplace_back(b.a, static_cast<int>(bi));
      }
    }
    Kekulizer kek(needs_pi, pi_adj);
    const int failed = kek.run();
    if (failed >= 0 && std::any_of(needs_pi.begin(), needs_pi.end(), [](bool v) { return v; })) {
      throw SmilesError(Errc::KekulizationFailure, "cannot assign alternating bonds",
                        atoms[static_cast<std::size_t>(failed)].position, failed);
    }
    const std::vector<int>& mb = kek.matched_bonds();
    for (std::size_t bi = 0; bi < bonds.size(); ++bi) {
      if (bonds[bi].order != 4) continue;
      const auto a = static_cast<std::size_t>(bonds[bi].a);
      bonds[bi].order = mb[a] == static_cast<int>(bi) ? 2 : 1;
    }
  }

  // Implicit hydrogens and valence check on the Kekule structure.
  for (std::size_t i = 0; i < n; ++i) {
    ProtoAtom& a = atoms[i];
    int sum = 0;
    for (auto [nb, bi] : adj[i]) sum += bonds[static_cast<std::size_t>(bi)].order;
    const Element& e = element_by_number(a.z);
    if (e.valences.empty()) {
      if (a.hydrogens < 0) a.hydrogens = 0;
      continue;
    }
    const std::vector<int> allowed = allowed_valences(e, a.charge);
    if (!a.bracket && !a.aromatic) {
      const auto it = std::find_if(allowed.begin(), allowed.end(), [&](int v) { return v >= sum; });
      if (it == allowed.end()) {
        throw SmilesError(Errc::ValenceViolation,
                          std::string(e.symbol) + " atom " + std::to_string(i) + " has valence " +
                              std::to_string(sum),
                          a.position, static_cast<int>(i));
      }
      a.hydrogens = *it - sum;
    } else if (sum + a.hydrogens > allowed.back()) {
      throw SmilesError(Errc::ValenceViolation,
                        std::string(e.symbol) + " atom " + std::to_string(i) + " has valence " +
                            std::to_string(sum + a.hydrogens),
                        a.position, static_cast<int>(i));
    }
  }

  // Rings and per-ring aromaticity on the Kekule form.
  std::vector<Bond> kekule_bonds;
  kekule_bonds.reserve(bonds.size());
  for (const ProtoBond& b : bonds) {
    kekule_bonds.push_back({b.a, b.b, static_cast<BondOrder>(b.order), static_cast<BondOrder>(b.order)});
  }
  const std::vector<std::vector<int>> cycles = smallest_rings(static_cast<int>(n), kekule_bonds);

  std::vector<Ring> rings(cycles.size());
  std::vector<bool> aromatic_atom(n, false);
  for (std::size_t r = 0; r < cycles.size(); ++r) rings[r].atoms = cycles[r];
  for (bool changed = true; changed;) {
    changed = false;
    for (Ring& ring : rings) {
      if (ring.aromatic) continue;
      int total = 0;
      bool planar = true;
      for (std::size_t k = 0; k < ring.atoms.size() && planar; ++k) {
        const auto e = pi_electrons(ring.atoms[k], ring.atoms, k, atoms, bonds, adj, aromatic_atom);
        if (!e) planar = false;
        else total += *e;
      }
      if (planar && total % 4 == 2) {
        ring.aromatic = true;
        for (int a : ring.atoms) aromatic_atom[static_cast<std::size_t>(a)] = true;
        changed = true;
      }
    }
  }
  for (Ring& ring : rings) {
    if (ring.aromatic) continue;
    int total = 0;
    bool planar = true;
    for (std::size_t k = 0; k < ring.atoms.size() && planar; ++k) {
      const auto e = pi_electrons(ring.atoms[k], ring.atoms, k, atoms, bonds, adj, aromatic_atom);
      if (!e) planar = false;
      else total += *e;
    }
    ring.antiaromatic = planar && total > 0 && total % 4 == 0;
  }

  std::vector<bool> aromatic_bond(bonds.size(), false);
  for (const Ring& ring : rings) {
    if (!ring.aromatic) continue;
    for (std::size_t k = 0; k < ring.atoms.size(); ++k) {
      const int a = ring.atoms[k];
      const int b = ring.atoms[(k + 1) % ring.atoms.size()];
      for (auto [nb, bi] : adj[static_cast<std::size_t>(a)]) {
        if (nb == b) aromatic_bond[static_cast<std::size_t>(bi)] = true;
      }
    }
  }

  std::vector<Atom> out_atoms(n);
  for (std::size_t i = 0; i < n; ++i) {
    out_atoms[i] = Atom{atoms[i].z, atoms[i].charge, static_cast<bool>(aromatic_atom[i]), atoms[i].hydrogens};
  }
  std::vector<Bond> out_bonds(bonds.size());
  for (std::size_t bi = 0; bi < bonds.size(); ++bi) {
    out_bonds[bi] = Bond{bonds[bi].a, bonds[bi].b,
                         aromatic_bond[bi] ? BondOrder::Aromatic : static_cast<BondOrder>(bonds[bi].order),
                         static_cast<BondOrder>(bonds[bi].order)};
  }
  return MolecularGraph(std::move(out_atoms), std::move(out_bonds), std::move(rings));
}

MolecularGraph parse_smiles(std::string_view smiles) { return parse(tokenize(smiles)); }

}  // namespace adseqgan::chem
