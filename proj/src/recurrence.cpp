#include "polyinv/recurrence.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

#include "polyinv/groebner.hpp"

namespace polyinv {

unsigned EigenData::rational_count() const {
    unsigned n = 0;
    for (const auto& [v, m] : rational_roots) n += m;
    return n;
}

// ---------------------------------------------------------------------------
// P-solvable structure detection

namespace {

// Tarjan strongly connected components on the variable dependency graph.
struct Scc {
    std::vector<std::vector<std::size_t>> components;  // each sorted ascending
    std::vector<std::size_t> component_of;
};

Scc strongly_connected_components(const std::vector<std::set<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    Scc out;
    out.component_of.assign(n, 0);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    int counter = 0;

    std::function<void(std::size_t)> strongconnect = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : adj[v]) {
            if (index[w] < 0) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            while (true) {
                std::size_t w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
                if (w == v) break;
            }
            std::sort(comp.begin(), comp.end());
            out.components.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) strongconnect(v);
    for (std::size_t c = 0; c < out.components.size(); ++c)
        for (std::size_t v : out.components[c]) out.component_of[v] = c;
    return out;
}

}  // namespace

DetectOutcome detect_p_solvable(const LoopSystem& loop) {
    DetectOutcome out;
    if (loop.branches.size() != 1) {
        out.unsupported_reason = "multi-branch loop: the recurrence analysis needs a single branch";
        return out;
    }
    if (!loop.branches[0].condition.trivially_true()) {
        out.unsupported_reason = "conditioned branch: the recurrence analysis needs an unconditional body";
        return out;
    }
    const std::size_t nv = loop.variables.size();
    const Branch& body = loop.branches[0];
    for (std::size_t i = 0; i < nv; ++i)
        for (const auto& [m, c] : body.assignment[i].terms())
            for (std::size_t j = nv; j < loop.arity(); ++j)
                if (m[j] > 0) {
                    out.unsupported_reason = "assignment of '" + loop.variables[i] +
                                             "' references parameter '" +
                                             loop.parameters[j - nv] + "'";
                    return out;
                }

    // Dependency edges i -> j when the update of x_i mentions x_j.
    std::vector<std::set<std::size_t>> adj(nv);
    for (std::size_t i = 0; i < nv; ++i)
        for (const auto& [m, c] : body.assignment[i].terms())
            for (std::size_t j = 0; j < nv; ++j)
                if (m[j] > 0) adj[i].insert(j);

    Scc scc = strongly_connected_components(adj);

    // Topological block order, dependencies first; ties broken by the
    // smallest original variable index for determinism.
    const std::size_t nc = scc.components.size();
    std::vector<std::set<std::size_t>> comp_deps(nc);  // block -> blocks it depends on
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j : adj[i])
            if (scc.component_of[i] != scc.component_of[j])
                comp_deps[scc.component_of[i]].insert(scc.component_of[j]);

    std::vector<std::size_t> order;
    std::vector<bool> placed(nc, false);
    while (order.size() < nc) {
        std::size_t best = nc;
        for (std::size_t c = 0; c < nc; ++c) {
            if (placed[c]) continue;
            bool ready = true;
            for (std::size_t d : comp_deps[c]) ready &= placed[d];
            if (!ready) continue;
            if (best == nc || scc.components[c][0] < scc.components[best][0]) best = c;
        }
        assert(best < nc);
        placed[best] = true;
        order.push_back(best);
    }

    PSolvableStructure st;
    std::vector<std::size_t> position(nv), block_of(nv);
    {
        std::size_t pos = 0;
        for (std::size_t bi = 0; bi < order.size(); ++bi) {
            const auto& comp = scc.components[order[bi]];
            st.blocks.push_back(comp);
            for (std::size_t v : comp) {
                st.variable_order.push_back(v);
                position[v] = pos++;
                block_of[v] = bi;
            }
        }
    }

    st.coefficient_matrix = QMatrix(nv, nv);
    st.tails.assign(nv, Polynomial(loop.arity()));
    st.tail_degrees.assign(st.blocks.size(), 0);

    for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t bi = block_of[v];
        for (const auto& [m, c] : body.assignment[v].terms()) {
            std::size_t own_var = nv;
            bool own_multiple = false;
            for (std::size_t j = 0; j < nv; ++j) {
                if (m[j] == 0 || block_of[j] != bi) continue;
                if (own_var != nv) own_multiple = true;
                own_var = j;
            }
            if (own_var != nv) {
                // A term touching the variable's own block must be linear.
                if (own_multiple || m.degree() != 1) {
                    out.structure.reset();
                    out.unsupported_reason =
                        "nonlinear coupling inside one dependency component";
                    std::string cycle = "component {";
                    for (std::size_t j : scc.components[order[bi]]) {
                        if (cycle.size() > 11) cycle += ", ";
                        cycle += loop.variables[j];
                    }
                    cycle += "}";
                    out.witness = {cycle, "offending update: " + loop.variables[v] + " := " +
                                              body.assignment[v].to_string(loop.ring_names())};
                    return out;
                }
                st.coefficient_matrix.at(position[v], position[own_var]) = c;
            } else {
                // Tail term: only earlier blocks can appear.
                for (std::size_t j = 0; j < nv; ++j) assert(m[j] == 0 || block_of[j] < bi);
                st.tails[position[v]].add_term(m, c);
            }
        }
        st.tail_degrees[bi] = std::max(st.tail_degrees[bi], st.tails[position[v]].total_degree());
    }

    out.structure = std::move(st);
    return out;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial and rational eigenvalues

Polynomial char_poly(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: non-square matrix");
    const std::size_t s = m.rows();
    // det(t I - M) interpolated from s+1 exact determinant evaluations.
    std::vector<Rational> xs, ys;
    for (std::size_t k = 0; k <= s; ++k) {
        QMatrix a(s, s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j)
                a.at(i, j) = (i == j ? Rational(static_cast<long>(k)) : Rational(0)) - m.at(i, j);
        xs.push_back(Rational(static_cast<long>(k)));
        ys.push_back(determinant(a));
    }
    Polynomial t = Polynomial::variable(1, 0);
    Polynomial acc(1);
    for (std::size_t i = 0; i <= s; ++i) {
        Polynomial li = Polynomial::constant(1, ys[i]);
        for (std::size_t j = 0; j <= s; ++j) {
            if (i == j) continue;
            li = li * (t - Polynomial::constant(1, xs[j])) * (Rational(1) / (xs[i] - xs[j]));
        }
        acc += li;
    }
    return acc;
}

namespace {

std::vector<Rational> univariate_coefficients(const Polynomial& p) {
    std::vector<Rational> c(p.total_degree() + 1, Rational(0));
    for (const auto& [m, coeff] : p.terms()) c[m[0]] = coeff;
    return c;
}

Polynomial univariate_from_coefficients(const std::vector<Rational>& c) {
    Polynomial p(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Monomial m(1);
        m[0] = static_cast<unsigned>(i);
        p.add_term(m, c[i]);
    }
    return p;
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// p / (t - r), exact; caller guarantees p(r) = 0.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
    const std::size_t n = c.size() - 1;
    std::vector<Rational> q(n, Rational(0));
    Rational carry = c[n];
    for (std::size_t k = n; k-- > 0;) {
        q[k] = carry;
        carry = c[k] + r * carry;
    }
    assert(carry == 0);
    return q;
}

std::vector<Integer> positive_divisors(const Integer& n_in) {
    Integer n = abs(n_in);
    if (n == 0) throw std::invalid_argument("divisors of zero requested");
    std::vector<std::pair<Integer, unsigned>> factors;
    Integer rest = n;
    for (unsigned long d = 2; d <= 1000000ul && Integer(d) * d <= rest; d = (d == 2 ? 3 : d + 2)) {
        if (rest % d == 0) {
            unsigned e = 0;
            while (rest % d == 0) {
                rest /= d;
                ++e;
            }
            factors.push_back({Integer(d), e});
        }
    }
    if (rest > 1) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 40) == 0)
            throw std::runtime_error("rational root search: coefficient has a large composite factor");
        factors.push_back({rest, 1});
    }
    std::vector<Integer> divisors{Integer(1)};
    for (const auto& [p, e] : factors) {
        std::size_t before = divisors.size();
        if (before * (e + 1) > 200000)
            throw std::runtime_error("rational root search: too many divisor candidates");
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < before; ++i) divisors.push_back(divisors[i] * pk);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

}  // namespace

EigenData rational_eigenvalues(const Polynomial& charpoly) {
    if (charpoly.arity() != 1 || charpoly.is_zero())
        throw std::invalid_argument("rational_eigenvalues: need a nonzero univariate polynomial");
    EigenData out;
    std::vector<Rational> c = univariate_coefficients(charpoly);

    // Roots at zero: trailing zero coefficients.
    std::size_t shift = 0;
    while (shift < c.size() && c[shift] == 0) ++shift;
    if (shift > 0) {
        out.rational_roots[Rational(0)] = static_cast<unsigned>(shift);
        c.erase(c.begin(), c.begin() + static_cast<long>(shift));
    }

    if (c.size() > 1) {
        // Primitive integer coefficients for the rational-root candidates.
        std::vector<Rational> prim =
            univariate_coefficients(univariate_from_coefficients(c).primitive_integer());
        std::vector<Integer> zc;
        for (const Rational& q : prim) zc.push_back(q.get_num());

        std::vector<Integer> num_div = positive_divisors(zc.front());
        std::vector<Integer> den_div = positive_divisors(zc.back());
        std::set<Rational> candidates;
        for (const Integer& p : num_div)
            for (const Integer& q : den_div) {
                Rational r(p, q);
                r.canonicalize();
                candidates.insert(r);
                candidates.insert(-r);
            }
        for (const Rational& r : candidates) {
            unsigned mult = 0;
            while (c.size() > 1 && horner(c, r) == 0) {
                c = deflate(c, r);
                ++mult;
            }
            if (mult) out.rational_roots[r] = mult;
            if (c.size() == 1) break;
        }
    }

    out.residual = univariate_from_coefficients(c).monic();
    auto it0 = out.rational_roots.find(Rational(0));
    out.zero_count = it0 == out.rational_roots.end() ? 0 : it0->second;
    auto it1 = out.rational_roots.find(Rational(1));
    out.one_count = it1 == out.rational_roots.end() ? 0 : it1->second;
    return out;
}

// ---------------------------------------------------------------------------
// Integer lattices: Hermite normal form, kernel, multiplicative relations

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

struct HnfResult {
    IntMatrix h;
    IntMatrix u;  // unimodular, u * a = h
    std::size_t rank = 0;
};

HnfResult hermite_normal_form(IntMatrix a) {
    const std::size_t nr = a.size();
    const std::size_t nc = nr == 0 ? 0 : a[0].size();
    IntMatrix u(nr, std::vector<Integer>(nr, 0));
    for (std::size_t i = 0; i < nr; ++i) u[i][i] = 1;

    auto row_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t j = 0; j < nc; ++j) a[dst][j] -= q * a[src][j];
        for (std::size_t j = 0; j < nr; ++j) u[dst][j] -= q * u[src][j];
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        while (true) {
            std::size_t best = nr;
            for (std::size_t i = r; i < nr; ++i) {
                if (a[i][c] == 0) continue;
                if (best == nr || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0)
                    best = i;
            }
            if (best == nr) break;  // column has no pivot
            if (best != r) {
                std::swap(a[best], a[r]);
                std::swap(u[best], u[r]);
            }
            bool cleared = true;
            for (std::size_t i = r + 1; i < nr; ++i) {
                if (a[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                row_sub(i, r, q);
                if (a[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (r < nr && a[r][c] != 0) {
            if (a[r][c] < 0) {
                for (std::size_t j = 0; j < nc; ++j) a[r][j] = -a[r][j];
                for (std::size_t j = 0; j < nr; ++j) u[r][j] = -u[r][j];
            }
            for (std::size_t i = 0; i < r; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                if (q != 0) row_sub(i, r, q);
            }
            ++r;
        }
    }
    return {std::move(a), std::move(u), r};
}

/// Basis of {x : x A = 0} as rows, from the unimodular transform of the HNF.
IntMatrix integer_kernel(const IntMatrix& a) {
    HnfResult hnf = hermite_normal_form(a);
    IntMatrix kernel;
    for (std::size_t i = hnf.rank; i < hnf.u.size(); ++i) kernel.push_back(hnf.u[i]);
    return kernel;
}

Rational rational_power(const Rational& base, const Integer& exp) {
    Rational acc(1);
    Integer e = abs(exp);
    Rational b = exp < 0 ? Rational(1) / base : base;
    // Plain repeated multiplication; exponents here are small.
    for (Integer i = 0; i < e; ++i) acc *= b;
    return acc;
}

struct Factorization {
    bool negative = false;
    std::vector<std::pair<Integer, long>> prime_powers;  // exponents signed (den negative)
};

Factorization factor_rational(const Rational& q) {
    Factorization out;
    out.negative = q < 0;
    auto accumulate = [&](Integer n, long sign) {
        n = abs(n);
        for (unsigned long d = 2; Integer(d) * d <= n && d <= 1000000ul; d = (d == 2 ? 3 : d + 2)) {
            long e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            if (e) out.prime_powers.push_back({Integer(d), sign * e});
        }
        if (n > 1) {
            if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
                throw std::runtime_error("multiplicative relation lattice: cannot factor eigenvalue");
            out.prime_powers.push_back({n, sign});
        }
    };
    accumulate(q.get_num(), +1);
    accumulate(q.get_den(), -1);
    return out;
}

}  // namespace

MultRelationLattice mult_relation_lattice(const std::vector<Rational>& lambdas) {
    const std::size_t k = lambdas.size();
    for (const Rational& l : lambdas)
        if (l == 0) throw std::invalid_argument("mult_relation_lattice: zero input");

    // Signed prime-power exponent matrix.
    std::vector<Factorization> facts;
    std::set<Integer> prime_set;
    for (const Rational& l : lambdas) {
        facts.push_back(factor_rational(l));
        for (const auto& [p, e] : facts.back().prime_powers) prime_set.insert(p);
    }
    std::vector<Integer> primes(prime_set.begin(), prime_set.end());

    IntMatrix exponents(k, std::vector<Integer>(primes.size(), 0));
    std::vector<int> sign_parity(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        sign_parity[i] = facts[i].negative ? 1 : 0;
        for (const auto& [p, e] : facts[i].prime_powers) {
            std::size_t j = static_cast<std::size_t>(
                std::lower_bound(primes.begin(), primes.end(), p) - primes.begin());
            exponents[i][j] = e;
        }
    }

    IntMatrix kernel = integer_kernel(exponents);

    // Intersect with the even sign-parity sublattice.
    auto parity = [&](const std::vector<Integer>& row) {
        Integer s = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (sign_parity[i]) s += row[i];
        return mpz_odd_p(s.get_mpz_t()) ? 1 : 0;
    };
    std::size_t odd = kernel.size();
    for (std::size_t i = 0; i < kernel.size(); ++i)
        if (parity(kernel[i])) {
            odd = i;
            break;
        }
    if (odd != kernel.size()) {
        for (std::size_t i = 0; i < kernel.size(); ++i) {
            if (i == odd || !parity(kernel[i])) continue;
            for (std::size_t j = 0; j < k; ++j) kernel[i][j] -= kernel[odd][j];
        }
        for (std::size_t j = 0; j < k; ++j) kernel[odd][j] *= 2;
    }

    // Canonical form, and exact verification of every row.
    HnfResult hnf = hermite_normal_form(kernel);
    MultRelationLattice out;
    out.ambient = k;
    for (std::size_t i = 0; i < hnf.rank; ++i) out.basis.push_back(hnf.h[i]);
    for (const auto& row : out.basis) {
        Rational prod(1);
        for (std::size_t i = 0; i < k; ++i) prod *= rational_power(lambdas[i], row[i]);
        if (prod != 1) throw std::logic_error("multiplicative relation failed exact verification");
    }
    return out;
}

LatticeIdealInfo lattice_ideal(const MultRelationLattice& lattice, std::size_t zero_eigen_count) {
    LatticeIdealInfo out;
    const std::size_t nonzero = lattice.ambient;
    const std::size_t k = nonzero + zero_eigen_count;
    out.variable_count = k;
    out.zero_count = zero_eigen_count;
    out.rank = lattice.rank();
    out.dimension = nonzero - lattice.rank();

    // Binomial generators y^{v+} - y^{v-} in the nonzero block.
    std::vector<Polynomial> binomials;
    for (const auto& row : lattice.basis) {
        Monomial pos(nonzero), neg(nonzero);
        for (std::size_t i = 0; i < nonzero; ++i) {
            if (row[i] > 0) pos[i] = static_cast<unsigned>(row[i].get_ui());
            if (row[i] < 0) neg[i] = static_cast<unsigned>(Integer(-row[i]).get_ui());
        }
        Polynomial b = Polynomial::from_monomial(pos, Rational(1));
        b -= Polynomial::from_monomial(neg, Rational(1));
        if (!b.is_zero()) binomials.push_back(std::move(b));
    }

    // The lattice ideal proper is the saturation of the basis binomials at
    // the coordinate torus.
    std::vector<Polynomial> saturated = binomials;
    if (!binomials.empty()) {
        std::vector<std::size_t> torus;
        for (std::size_t i = 0; i < nonzero; ++i) torus.push_back(i);
        saturated = saturate_by_product(binomials, torus);
    }

    for (const Polynomial& g : saturated)
        if (!g.is_zero()) out.generators.push_back(g.extended(k));
    for (std::size_t j = 0; j < zero_eigen_count; ++j)
        out.generators.push_back(Polynomial::variable(k, nonzero + j));

    // Degree by generic affine slicing: r independent random slices, three
    // draws, majority agreement required.
    struct SplitMix {
        std::uint64_t state;
        std::uint64_t next() {
            std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        }
    };
    std::vector<std::optional<std::size_t>> counts;
    for (int trial = 0; trial < 3; ++trial) {
        SplitMix rng{0x51ce5u + 7919u * static_cast<std::uint64_t>(trial)};
        std::vector<Polynomial> gens = out.generators;
        for (std::size_t slice = 0; slice < out.dimension; ++slice) {
            Polynomial form =
                Polynomial::constant(k, make_rational(static_cast<long>(rng.next() % 9) + 1));
            for (std::size_t v = 0; v < k; ++v) {
                long coeff = static_cast<long>(rng.next() % 17) - 8;
                if (coeff == 0) coeff = 3;
                form += Polynomial::variable(k, v) * make_rational(coeff);
            }
            gens.push_back(form);
        }
        try {
            GroebnerBasis gb = buchberger(gens, MonomialOrder::degrevlex());
            counts.push_back(quotient_dimension_zero_dim(gb));
        } catch (const BudgetExceeded&) {
            counts.push_back(std::nullopt);
        }
    }
    for (int a = 0; a < 3 && !out.degree; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (counts[a] && counts[b] && *counts[a] == *counts[b]) {
                out.degree = Integer(static_cast<unsigned long>(*counts[a]));
                break;
            }
    return out;
}

BoundReport degree_bound(const PSolvableStructure& structure, const LatticeIdealInfo& ideal,
                         const EigenData& eigen) {
    BoundReport report;
    const std::size_t kb = structure.block_count();
    for (const auto& b : structure.blocks) report.block_sizes.push_back(b.size());
    for (std::size_t j = 0; j < kb; ++j)
        report.block_tail_degrees.push_back(j == 0 ? 1u : structure.tail_degrees[j]);

    // D_1 = n_1, D_j = d_j D_{j-1} + n_j; the decoupled sequence multiplies
    // the per-block tail degrees, which is what n-free closed forms obey.
    Integer d = Integer(static_cast<unsigned long>(report.block_sizes[0]));
    Integer w = 1;
    report.degree_sequence.push_back(d);
    report.decoupled_sequence.push_back(w);
    for (std::size_t j = 1; j < kb; ++j) {
        unsigned dj = report.block_tail_degrees[j];
        d = Integer(dj) * d + Integer(static_cast<unsigned long>(report.block_sizes[j]));
        w = w * Integer(std::max(dj, 1u));
        report.degree_sequence.push_back(d);
        report.decoupled_sequence.push_back(w);
    }

    report.lattice_degree = ideal.degree;
    report.lattice_rank = ideal.rank;
    report.ideal_dimension_m = ideal.dimension;

    if (ideal.degree) {
        const std::size_t r = ideal.dimension;
        auto power = [](const Integer& base, std::size_t e) {
            Integer acc = 1;
            for (std::size_t i = 0; i < e; ++i) acc *= base;
            return acc;
        };
        report.bound_generic = *ideal.degree * power(d, r + 1);
        report.bound_n_free = *ideal.degree * power(d, r);
        report.bound_sharp = *ideal.degree * power(w, r);
        report.notes.push_back(
            "n-free and decoupled bounds assume exponential-only closed forms "
            "(weakly multiplicatively independent eigenvalues)");
    } else {
        report.notes.push_back("lattice ideal degree unverified: slice counts disagreed");
    }
    if (eigen.zero_count > 0 || eigen.one_count > 0)
        report.notes.push_back(
            "hypothesis violated: 0 or 1 is an eigenvalue; the degree-sequence estimate is "
            "outside the stated assumptions");
    return report;
}

void dimension_and_triviality(BoundReport& report, const LatticeIdealInfo& ideal,
                              std::size_t var_count, bool parametric, bool all_rational) {
    const std::size_t r = ideal.dimension;
    report.dimension_window_low = r;
    report.dimension_window_high = r + 1;
    report.notes.push_back("dimension window lower end holds for generic initial values only");
    if (r + 1 < var_count) {
        report.triviality = "nontrivial-guaranteed";
    } else if (ideal.rank == 0 && ideal.zero_count == 0 && all_rational && parametric) {
        report.triviality = "trivial-for-parametric-init";
    } else {
        report.triviality = "inconclusive";
    }
}

AnalyzeReport analyze_loop(const LoopSystem& loop,
                           const std::optional<std::vector<std::vector<Integer>>>& user_lattice) {
    AnalyzeReport rep;
    rep.detection = detect_p_solvable(loop);
    if (!rep.detection.supported()) {
        rep.notes.push_back("not P-solvable: " + rep.detection.unsupported_reason);
        return rep;
    }
    const PSolvableStructure& st = *rep.detection.structure;
    const std::size_t s = loop.variables.size();

    rep.characteristic = char_poly(st.coefficient_matrix);
    rep.eigen = rational_eigenvalues(rep.characteristic);
    const std::size_t nonzero = s - rep.eigen.zero_count;

    if (user_lattice) {
        MultRelationLattice lattice;
        lattice.ambient = nonzero;
        IntMatrix rows;
        for (const auto& row : *user_lattice) {
            if (row.size() != nonzero)
                throw std::invalid_argument(
                    "user lattice rows must have one entry per nonzero eigenvalue (" +
                    std::to_string(nonzero) + ")");
            rows.push_back(row);
        }
        HnfResult hnf = hermite_normal_form(rows);
        for (std::size_t i = 0; i < hnf.rank; ++i) lattice.basis.push_back(hnf.h[i]);
        rep.lattice = std::move(lattice);
        rep.lattice_user_supplied = true;
        rep.notes.push_back("multiplicative relation lattice supplied by the user, taken as given");
    } else if (rep.eigen.all_rational()) {
        std::vector<Rational> lambdas;
        for (const auto& [value, mult] : rep.eigen.rational_roots) {
            if (value == 0) continue;
            for (unsigned i = 0; i < mult; ++i) lambdas.push_back(value);
        }
        MultRelationLattice lattice;
        lattice.ambient = lambdas.size();
        if (!lambdas.empty()) lattice = mult_relation_lattice(lambdas);
        rep.lattice = std::move(lattice);
    } else {
        rep.notes.push_back(
            "irrational eigenvalues: the multiplicative relation lattice needs an external basis "
            "(supply one with --lattice)");
        return rep;
    }

    rep.ideal = lattice_ideal(*rep.lattice, rep.eigen.zero_count);
    rep.bounds = degree_bound(st, *rep.ideal, rep.eigen);
    dimension_and_triviality(*rep.bounds, *rep.ideal, s, loop.parametric(),
                             rep.eigen.all_rational());
    return rep;
}

}  // namespace polyinv
