#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hhtwist/cohomology.hpp"

namespace hht {

enum class QciKind { generic, minus_one, odd_root, even_root, char2_one, char0_one };

std::string kind_name(QciKind k);

/// Which q-regime Lambda_q falls in, with r the order of q for roots of unity.
struct QciCase {
    QciKind kind = QciKind::generic;
    FieldPtr field;
    Scalar q;
    int r = 0;
};

/// Classifies q by the characteristic of its field and its multiplicative
/// order. Throws std::invalid_argument for q = 0.
QciCase classify(const FieldPtr& field, const Scalar& q);

/// Default instance of a regime: Q(q); Q with q = -1; cyclotomic(3);
/// cyclotomic(4); F_2 with q = 1; Q with q = 1.
QciCase default_case(QciKind kind);

/// Builds the field and q from a command-line style specification:
/// q is "generic", "root:r" or a scalar literal, p the characteristic.
QciCase case_from_spec(const std::string& q, long p);

enum class PhiChoice { closed_form, twisted };

/// A generator cochain of HH(Lambda_q) with its display name.
struct NamedCochain {
    std::string name;
    Cochain cochain;
};

struct QciBuild {
    QciCase c;
    AlgebraPtr lambda;
    ComplexPtr k;
    std::shared_ptr<Hochschild> hh;
    std::vector<NamedCochain> generators;
};

/// Smallest resolution degree for which the whole bracket table of the case
/// can be computed.
int required_degree(const QciCase& c);

/// Koszul resolution of Lambda_q through max_degree with the closed-form
/// diagonal and the chosen contracting homotopy, without generators.
QciBuild build_resolution(const QciCase& c, int max_degree, PhiChoice phi = PhiChoice::closed_form);

/// Koszul resolution of Lambda_q through max_degree with the closed-form
/// diagonal and the chosen contracting homotopy, and the generator
/// cochains of the case, each verified to be a cocycle.
QciBuild build_case(const QciCase& c, int max_degree, PhiChoice phi = PhiChoice::closed_form);

/// Replaces e( by e*( and drops the e*(0,0) of degree zero terms.
std::string display_name(const std::string& cochain_text);

struct BracketRow {
    std::string f, g;
    bool listed = false;
    std::string expected;
    std::string computed;
    std::vector<Scalar> coords;
    Degree internal_degree;
    bool chain_level = false;
    bool ok = false;
};

struct ValueRow {
    std::string name;
    std::string expected;
    std::string computed;
    bool ok = false;
};

struct BracketTable {
    QciCase c;
    int max_degree = 0;
    std::vector<std::string> generators;
    std::vector<BracketRow> brackets;
    /// Circle product values on a generator of K, compared exactly.
    std::vector<ValueRow> circles;
    /// Consequences of the derivation law and brackets in the factors.
    std::vector<ValueRow> derived;
    /// Brackets recomputed from factor data through the tensor structure.
    std::vector<ValueRow> tensor_route;
    std::vector<std::string> diff;
    bool ok() const { return diff.empty(); }
};

/// Brackets of all generator pairs as classes, compared with the expected
/// table of the case. Listed entries are computed in their printed order;
/// every other pair must bracket to zero.
BracketTable bracket_table(const QciBuild& b);

}  // namespace hht
