#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "netcover/common.hpp"

namespace netcover {

enum class VarKind { Binary, Continuous };
enum class Sense { Le, Ge, Eq };

// Ties a model variable back to the network entity it describes.
struct VarEntity {
    enum class Kind {
        None,
        NodeFacility,   // y_v
        EdgeFacility,   // y_e
        CompleteCover,  // w_e
        AllCovered,     // x_v
        ServeNode,      // z_{v v'}
        ServeEdgeEnd,   // z_{v e' i'}
        Coordinate,     // q_e
        Residual,       // r_v
        LongLayout      // u_e
    };
    Kind kind = Kind::None;
    NodeId node = -1;  // v
    EdgeId edge = -1;  // e (or e' for serve variables)
    NodeId other = -1; // v' for ServeNode
    char end = 0;      // 'a' or 'b' for ServeEdgeEnd
};

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = kInf;
    VarEntity entity;
};

struct Term {
    double coef = 0.0;
    int var = -1;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    Sense sense = Sense::Le;
    double rhs = 0.0;
};

class ModelSpec {
public:
    std::string name = "model";

    int add_variable(const std::string& vname, VarKind kind, double lb, double ub,
                     VarEntity entity = {}) {
        if (index_.count(vname)) throw std::logic_error("duplicate variable name: " + vname);
        Variable v;
        v.name = vname;
        v.kind = kind;
        v.lb = lb;
        v.ub = ub;
        v.entity = entity;
        int id = static_cast<int>(variables_.size());
        index_[vname] = id;
        variables_.push_back(std::move(v));
        return id;
    }

    int var(const std::string& vname) const {
        auto it = index_.find(vname);
        if (it == index_.end()) throw std::out_of_range("no such variable: " + vname);
        return it->second;
    }
    bool has_var(const std::string& vname) const { return index_.count(vname) > 0; }

    void fix_variable(int id, double value) {
        variables_.at(id).lb = value;
        variables_.at(id).ub = value;
    }

    void add_constraint(const std::string& cname, std::vector<Term> terms, Sense sense,
                        double rhs) {
        for (const Term& t : terms)
            if (t.var < 0 || t.var >= static_cast<int>(variables_.size()))
                throw std::logic_error("constraint references unknown variable");
        Constraint c;
        c.name = cname;
        c.terms = std::move(terms);
        c.sense = sense;
        c.rhs = rhs;
        constraints_.push_back(std::move(c));
    }

    void add_objective_term(int id, double coef) { objective_.push_back({coef, id}); }
    void add_objective_constant(double c) { objective_constant_ += c; }

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<Term>& objective() const { return objective_; }
    double objective_constant() const { return objective_constant_; }

    size_t count_constraints(const std::string& prefix) const {
        size_t k = 0;
        for (const auto& c : constraints_)
            if (c.name.rfind(prefix, 0) == 0) ++k;
        return k;
    }

    void remove_constraints(const std::string& prefix) {
        constraints_.erase(std::remove_if(constraints_.begin(), constraints_.end(),
                                          [&](const Constraint& c) {
                                              return c.name.rfind(prefix, 0) == 0;
                                          }),
                           constraints_.end());
    }

    double objective_value(const std::vector<double>& x) const {
        double v = objective_constant_;
        for (const Term& t : objective_) v += t.coef * x.at(t.var);
        return v;
    }

    static double lhs_value(const Constraint& c, const std::vector<double>& x) {
        double v = 0.0;
        for (const Term& t : c.terms) v += t.coef * x.at(t.var);
        return v;
    }

    static double violation(const Constraint& c, const std::vector<double>& x) {
        double lhs = lhs_value(c, x);
        switch (c.sense) {
            case Sense::Le: return std::max(0.0, lhs - c.rhs);
            case Sense::Ge: return std::max(0.0, c.rhs - lhs);
            case Sense::Eq: return std::abs(lhs - c.rhs);
        }
        return 0.0;
    }

    // Max violation over all rows and variable bounds, each normalized by
    // 1 + |rhs| (resp. 1 + |bound|).
    double max_violation(const std::vector<double>& x) const {
        double worst = 0.0;
        for (const auto& c : constraints_)
            worst = std::max(worst, violation(c, x) / (1.0 + std::abs(c.rhs)));
        for (size_t i = 0; i < variables_.size(); ++i) {
            const Variable& v = variables_[i];
            if (x[i] < v.lb) worst = std::max(worst, (v.lb - x[i]) / (1.0 + std::abs(v.lb)));
            if (x[i] > v.ub) worst = std::max(worst, (x[i] - v.ub) / (1.0 + std::abs(v.ub)));
        }
        return worst;
    }

    // Values keyed by variable name -> dense vector in variable order.
    std::vector<double> to_vector(const std::map<std::string, double>& values) const {
        std::vector<double> x(variables_.size(), 0.0);
        for (size_t i = 0; i < variables_.size(); ++i) {
            auto it = values.find(variables_[i].name);
            if (it != values.end()) x[i] = it->second;
        }
        return x;
    }

private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::vector<Term> objective_;
    double objective_constant_ = 0.0;
    std::unordered_map<std::string, int> index_;
};

namespace detail {

inline std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void emit_terms(std::ostream& out, const ModelSpec& m, const std::vector<Term>& terms,
                       bool& first) {
    for (const Term& t : terms) {
        if (t.coef == 0.0) continue;
        double c = t.coef;
        if (first) {
            if (c < 0) {
                out << "- ";
                c = -c;
            }
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
            c = std::abs(c);
        }
        out << fmt_num(c) << ' ' << m.variables()[t.var].name;
    }
}

}  // namespace detail

// Canonical LP-format text: deterministic ordering, round-trippable by
// standard MILP solvers.
inline void emit_lp(const ModelSpec& m, std::ostream& out) {
    out << "\\ " << m.name << "\n";
    out << "Minimize\n obj: ";
    bool first = true;
    detail::emit_terms(out, m, m.objective(), first);
    if (m.objective_constant() != 0.0) {
        if (first)
            out << detail::fmt_num(m.objective_constant());
        else
            out << (m.objective_constant() < 0 ? " - " : " + ")
                << detail::fmt_num(std::abs(m.objective_constant()));
        first = false;
    }
    if (first && !m.variables().empty()) out << "0 " << m.variables().front().name;
    out << "\nSubject To\n";
    for (const auto& c : m.constraints()) {
        out << ' ' << c.name << ": ";
        bool f = true;
        detail::emit_terms(out, m, c.terms, f);
        if (f) out << "0 " << m.variables().front().name;
        switch (c.sense) {
            case Sense::Le: out << " <= "; break;
            case Sense::Ge: out << " >= "; break;
            case Sense::Eq: out << " = "; break;
        }
        out << detail::fmt_num(c.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : m.variables()) {
        if (v.lb == v.ub) {
            out << ' ' << v.name << " = " << detail::fmt_num(v.lb) << '\n';
        } else if (v.kind == VarKind::Binary) {
            continue;  // implied [0,1]
        } else if (v.ub < kInf) {
            out << ' ' << detail::fmt_num(v.lb) << " <= " << v.name << " <= "
                << detail::fmt_num(v.ub) << '\n';
        } else if (v.lb != 0.0) {
            out << ' ' << v.name << " >= " << detail::fmt_num(v.lb) << '\n';
        }
    }
    bool any_bin = false;
    for (const auto& v : m.variables()) any_bin = any_bin || v.kind == VarKind::Binary;
    if (any_bin) {
        out << "Binaries\n";
        int col = 0;
        for (const auto& v : m.variables()) {
            if (v.kind != VarKind::Binary) continue;
            out << ' ' << v.name;
            if (++col % 8 == 0) out << '\n';
        }
        if (col % 8 != 0) out << '\n';
    }
    out << "End\n";
}

inline std::string emit_lp_string(const ModelSpec& m) {
    std::ostringstream os;
    emit_lp(m, os);
    return os.str();
}

}  // namespace netcover
