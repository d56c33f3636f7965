#include "curator/chem/smiles.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "curator/chem/valence.h"

namespace curator::chem {

SmilesError::SmilesError(SmilesErrorKind kind, std::size_t position,
                         const std::string &what)
    : std::runtime_error(what), kind_(kind), position_(position) { }

namespace {

struct PendingBond {
  BondOrder order;
  std::size_t pos;
};

struct OpenRing {
  int atom;
  std::optional<BondOrder> order;
  std::size_t pos;
};

class Parser {
public:
  explicit Parser(std::string_view text): text_(text) { }

  MoleculeGraph run() {
    if (text_.empty()) {
      fail(SmilesErrorKind::kSyntax, 0, "empty SMILES");
    }
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      switch (c) {
      case '(':
        open_branch();
        break;
      case ')':
        close_branch();
        break;
      case '.':
        if (pending_ || prev_ < 0) {
          fail(SmilesErrorKind::kSyntax, pos_, "misplaced '.'");
        }
        prev_ = -1;
        ++pos_;
        break;
      case '-':
      case '=':
      case '#':
      case ':':
      case '/':
      case '\\':
        read_bond();
        break;
      case '%':
        read_ring_bond(read_percent_ring());
        break;
      case '[':
        attach(read_bracket_atom());
        break;
      default:
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
          read_ring_bond(c - '0');
          ++pos_;
        } else {
          attach(read_organic_atom());
        }
      }
    }
    if (pending_) {
      fail(SmilesErrorKind::kSyntax, pending_->pos, "dangling bond");
    }
    if (!branches_.empty()) {
      fail(SmilesErrorKind::kUnmatchedParenthesis, branches_.back().pos,
           "unclosed branch");
    }
    if (!rings_.empty()) {
      const auto &[num, ring] = *rings_.begin();
      fail(SmilesErrorKind::kUnmatchedRingClosure, ring.pos,
           "unclosed ring bond " + std::to_string(num));
    }
    return std::move(mol_);
  }

private:
  struct Branch {
    int atom;
    std::size_t pos;
  };

  [[noreturn]] void fail(SmilesErrorKind kind, std::size_t pos,
                         const std::string &msg) const {
    throw SmilesError(kind, pos,
                      msg + " at position " + std::to_string(pos) + " in '"
                          + std::string(text_) + "'");
  }

  void open_branch() {
    if (prev_ < 0 || pending_ || branch_start_) {
      fail(SmilesErrorKind::kSyntax, pos_, "misplaced '('");
    }
    branches_.push_back({ prev_, pos_ });
    branch_start_ = true;
    ++pos_;
  }

  void close_branch() {
    if (branches_.empty()) {
      fail(SmilesErrorKind::kUnmatchedParenthesis, pos_, "unmatched ')'");
    }
    if (pending_ || branch_start_) {
      fail(SmilesErrorKind::kSyntax, pos_, "empty or dangling branch");
    }
    prev_ = branches_.back().atom;
    branches_.pop_back();
    ++pos_;
  }

  void read_bond() {
    if (pending_ || prev_ < 0) {
      fail(SmilesErrorKind::kSyntax, pos_, "misplaced bond symbol");
    }
    BondOrder order = BondOrder::kSingle;
    switch (text_[pos_]) {
    case '=':
      order = BondOrder::kDouble;
      break;
    case '#':
      order = BondOrder::kTriple;
      break;
    case ':':
      order = BondOrder::kAromatic;
      break;
    default:
      break;
    }
    pending_ = PendingBond { order, pos_ };
    ++pos_;
  }

  int read_percent_ring() {
    if (pos_ + 2 >= text_.size()
        || std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) == 0
        || std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])) == 0) {
      fail(SmilesErrorKind::kSyntax, pos_, "malformed %nn ring bond");
    }
    const int num = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
    pos_ += 3;
    return num;
  }

  void read_ring_bond(int num) {
    if (prev_ < 0 || branch_start_) {
      fail(SmilesErrorKind::kSyntax, pos_, "ring bond without atom");
    }
    std::optional<BondOrder> order;
    if (pending_) {
      order = pending_->order;
      pending_.reset();
    }
    auto it = rings_.find(num);
    if (it == rings_.end()) {
      rings_.emplace(num, OpenRing { prev_, order, pos_ });
      return;
    }
    const OpenRing open = it->second;
    rings_.erase(it);
    if (open.order && order && *open.order != *order) {
      fail(SmilesErrorKind::kSyntax, pos_, "conflicting ring bond orders");
    }
    const BondOrder resolved =
        open.order ? *open.order
                   : order.value_or(default_order(open.atom, prev_));
    if (open.atom == prev_) {
      fail(SmilesErrorKind::kSyntax, pos_, "ring bond to itself");
    }
    if (mol_.find_bond(open.atom, prev_) >= 0) {
      fail(SmilesErrorKind::kSyntax, pos_, "duplicate bond");
    }
    mol_.add_bond(open.atom, prev_, resolved);
  }

  BondOrder default_order(int a, int b) const {
    return mol_.atom(a).aromatic && mol_.atom(b).aromatic
               ? BondOrder::kAromatic
               : BondOrder::kSingle;
  }

  void attach(Atom atom) {
    const int idx = mol_.add_atom(std::move(atom));
    if (prev_ >= 0) {
      const BondOrder order =
          pending_ ? pending_->order : default_order(prev_, idx);
      mol_.add_bond(prev_, idx, order);
    } else if (pending_) {
      fail(SmilesErrorKind::kSyntax, pending_->pos, "bond without atom");
    }
    pending_.reset();
    prev_ = idx;
    branch_start_ = false;
  }

  static Atom organic(std::string symbol, bool aromatic) {
    Atom atom;
    atom.symbol = std::move(symbol);
    atom.aromatic = aromatic;
    return atom;
  }

  Atom read_organic_atom() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      pos_ += 2;
      return organic("Cl", false);
    }
    if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      pos_ += 2;
      return organic("Br", false);
    }
    ++pos_;
    switch (c) {
    case 'B':
    case 'C':
    case 'N':
    case 'O':
    case 'P':
    case 'S':
    case 'F':
    case 'I':
      return organic(std::string(1, c), false);
    case 'b':
    case 'c':
    case 'n':
    case 'o':
    case 'p':
    case 's':
      return organic(std::string(1, static_cast<char>(std::toupper(c))), true);
    default:
      fail(SmilesErrorKind::kSyntax, start,
           std::string("unexpected character '") + c + "'");
    }
  }

  int read_number() {
    int value = 0;
    bool any = false;
    while (pos_ < text_.size()
           && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 100000) {
        fail(SmilesErrorKind::kSyntax, pos_, "number too large");
      }
      any = true;
      ++pos_;
    }
    return any ? value : -1;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  Atom read_bracket_atom() {
    const std::size_t open = pos_++;
    Atom atom;
    if (const int iso = read_number(); iso >= 0) {
      atom.isotope = iso;
    }
    read_bracket_symbol(atom, open);

    if (peek('@')) {
      ++pos_;
      if (peek('@')) {
        ++pos_;
      } else if (pos_ + 1 < text_.size()) {
        const std::string_view two = text_.substr(pos_, 2);
        if (two == "TH" || two == "AL" || two == "SP" || two == "TB"
            || two == "OH") {
          pos_ += 2;
          if (read_number() < 0) {
            fail(SmilesErrorKind::kSyntax, pos_, "chirality class number");
          }
        }
      }
    }

    atom.explicit_h = 0;
    if (peek('H')) {
      ++pos_;
      const int h = read_number();
      atom.explicit_h = h < 0 ? 1 : h;
    }

    if (peek('+') || peek('-')) {
      const char sign = text_[pos_++];
      int magnitude = 1;
      if (const int n = read_number(); n >= 0) {
        magnitude = n;
      } else {
        while (peek(sign)) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.charge = sign == '+' ? magnitude : -magnitude;
    }

    if (peek(':')) {
      ++pos_;
      if (read_number() < 0) {
        fail(SmilesErrorKind::kSyntax, pos_, "atom class number");
      }
    }
    if (!peek(']')) {
      fail(SmilesErrorKind::kSyntax, pos_, "unterminated bracket atom");
    }
    ++pos_;
    return atom;
  }

  void read_bracket_symbol(Atom &atom, std::size_t open) {
    if (pos_ >= text_.size()) {
      fail(SmilesErrorKind::kSyntax, open, "unterminated bracket atom");
    }
    for (const std::string_view arom: { "se", "as", "te" }) {
      if (text_.substr(pos_, 2) == arom) {
        atom.symbol = { static_cast<char>(std::toupper(arom[0])), arom[1] };
        atom.aromatic = true;
        pos_ += 2;
        return;
      }
    }
    const char c = text_[pos_];
    if (c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's') {
      atom.symbol = std::string(1, static_cast<char>(std::toupper(c)));
      atom.aromatic = true;
      ++pos_;
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c)) == 0) {
      fail(SmilesErrorKind::kSyntax, pos_, "expected element symbol");
    }
    if (pos_ + 1 < text_.size()
        && std::islower(static_cast<unsigned char>(text_[pos_ + 1])) != 0) {
      const std::string two(text_.substr(pos_, 2));
      if (atomic_number(two) != 0) {
        atom.symbol = two;
        pos_ += 2;
        return;
      }
    }
    const std::string one(1, c);
    if (atomic_number(one) == 0) {
      fail(SmilesErrorKind::kSyntax, pos_, "unknown element '" + one + "'");
    }
    atom.symbol = one;
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MoleculeGraph mol_;
  int prev_ = -1;
  bool branch_start_ = false;
  std::optional<PendingBond> pending_;
  std::vector<Branch> branches_;
  std::map<int, OpenRing> rings_;
};

// --- writer -------------------------------------------------------------

struct RingBond {
  int bond;
  bool opens;
};

struct AtomPlan {
  std::vector<Neighbor> children;
  std::vector<RingBond> rings;
};

class Writer {
public:
  Writer(const MoleculeGraph &mol, std::span<const int> rank)
      : mol_(mol), rank_(rank), plan_(mol.num_atoms()),
        visited_(mol.num_atoms(), false), used_(mol.num_bonds(), false),
        digit_of_(mol.num_bonds(), 0) { }

  std::string run() {
    std::vector<int> order(mol_.num_atoms());
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rank_[a] < rank_[b]; });
    for (int start: order) {
      if (visited_[start]) {
        continue;
      }
      plan(start, -1);
      if (!out_.empty()) {
        out_ += '.';
      }
      write(start, -1);
    }
    return std::move(out_);
  }

private:
  void plan(int atom, int parent_bond) {
    visited_[atom] = true;
    std::vector<Neighbor> nbrs(mol_.neighbors(atom).begin(),
                               mol_.neighbors(atom).end());
    std::sort(nbrs.begin(), nbrs.end(), [&](const Neighbor &a, const Neighbor &b) {
      return rank_[a.atom] < rank_[b.atom];
    });
    for (const Neighbor &nb: nbrs) {
      if (nb.bond == parent_bond || used_[nb.bond]) {
        continue;
      }
      used_[nb.bond] = true;
      if (visited_[nb.atom]) {
        plan_[nb.atom].rings.push_back({ nb.bond, true });
        plan_[atom].rings.push_back({ nb.bond, false });
      } else {
        plan_[atom].children.push_back(nb);
        plan(nb.atom, nb.bond);
      }
    }
  }

  void write(int atom, int incoming) {
    if (incoming >= 0) {
      out_ += bond_symbol(incoming);
    }
    write_atom(atom);
    for (const RingBond &rb: plan_[atom].rings) {
      int digit;
      if (rb.opens) {
        digit = 1;
        while (digits_in_use_.count(digit) != 0) {
          ++digit;
        }
        digits_in_use_.insert(digit);
        digit_of_[rb.bond] = digit;
        out_ += bond_symbol(rb.bond);
      } else {
        digit = digit_of_[rb.bond];
        digits_in_use_.erase(digit);
      }
      if (digit < 10) {
        out_ += static_cast<char>('0' + digit);
      } else {
        out_ += '%';
        out_ += std::to_string(digit);
      }
    }
    const auto &children = plan_[atom].children;
    for (std::size_t i = 0; i < children.size(); ++i) {
      const bool last = i + 1 == children.size();
      if (!last) {
        out_ += '(';
      }
      write(children[i].atom, children[i].bond);
      if (!last) {
        out_ += ')';
      }
    }
  }

  std::string bond_symbol(int bond) const {
    const Bond &b = mol_.bond(bond);
    const bool both_aromatic =
        mol_.atom(b.begin).aromatic && mol_.atom(b.end).aromatic;
    switch (b.order) {
    case BondOrder::kSingle:
      return both_aromatic ? "-" : "";
    case BondOrder::kDouble:
      return "=";
    case BondOrder::kTriple:
      return "#";
    case BondOrder::kAromatic:
      return both_aromatic ? "" : ":";
    }
    return "";
  }

  void write_atom(int atom) {
    const Atom &a = mol_.atom(atom);
    std::string symbol = a.symbol;
    if (a.aromatic) {
      symbol[0] = static_cast<char>(std::tolower(symbol[0]));
    }
    const int h = total_hydrogens(mol_, atom);
    if (is_organic_subset(a.symbol, a.aromatic) && a.charge == 0
        && !a.isotope && h == default_hydrogens(mol_, atom)) {
      out_ += symbol;
      return;
    }
    out_ += '[';
    if (a.isotope) {
      out_ += std::to_string(*a.isotope);
    }
    out_ += symbol;
    if (h > 0) {
      out_ += 'H';
      if (h > 1) {
        out_ += std::to_string(h);
      }
    }
    if (a.charge != 0) {
      out_ += a.charge > 0 ? '+' : '-';
      const int mag = std::abs(a.charge);
      if (mag > 1) {
        out_ += std::to_string(mag);
      }
    }
    out_ += ']';
  }

  const MoleculeGraph &mol_;
  std::span<const int> rank_;
  std::vector<AtomPlan> plan_;
  std::vector<bool> visited_;
  std::vector<bool> used_;
  std::vector<int> digit_of_;
  std::set<int> digits_in_use_;
  std::string out_;
};

}  // namespace

MoleculeGraph parse_smiles(std::string_view text, SmilesParseOptions options) {
  MoleculeGraph mol = Parser(text).run();
  if (options.check_valence) {
    const ValenceVerdict v = validate_valence(mol);
    if (!v.ok) {
      throw SmilesError(SmilesErrorKind::kValence,
                        static_cast<std::size_t>(v.atom),
                        "valence violation at atom " + std::to_string(v.atom)
                            + " (" + mol.atom(v.atom).symbol + ") in '"
                            + std::string(text) + "'");
    }
  }
  return mol;
}

bool is_legal_smiles(std::string_view text) {
  try {
    parse_smiles(text);
    return true;
  } catch (const SmilesError &) {
    return false;
  }
}

std::string write_smiles(const MoleculeGraph &mol, std::span<const int> rank) {
  return Writer(mol, rank).run();
}

}  // namespace curator::chem
