#include "collatz/structure.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace collatz {

Natural a_element(std::uint64_t n) {
    if (n == 0) throw DomainError("a_element: index must be >= 1");
    return (Natural::pow2(2 * (n + 1)) - Natural(1)) / Natural(3);
}

Natural b_element(std::uint64_t n) { return a_element(n) << 1; }

bool in_set_a(const Natural& x) {
    if (x.is_zero() || x.is_even() || x.is_one()) return false;
    return is_power_of_four(x * Natural(3) + Natural(1));
}

bool in_set_b(const Natural& x) { return !x.is_zero() && x.is_even() && in_set_a(x >> 1); }

std::vector<Natural> preimages(const Natural& n, bool include_one) {
    if (n.is_zero()) throw DomainError("preimages: n must be >= 1");
    std::vector<Natural> out{n << 1};
    if (n.mod_small(3) == 1) {
        Natural m = (n - Natural(1)) / Natural(3);
        if (!m.is_zero() && m.is_odd() && (include_one || !m.is_one())) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BackwardNode> backward_tree(const Natural& root, std::uint64_t depth, bool include_one) {
    if (root.is_zero()) throw DomainError("backward_tree: root must be >= 1");
    std::vector<BackwardNode> nodes{{root, 0, std::nullopt, false}};
    std::set<Natural> seen{root};
    std::vector<std::size_t> frontier{0};

    for (std::uint64_t level = 1; level <= depth && !frontier.empty(); ++level) {
        std::vector<std::size_t> next;
        for (const auto idx : frontier) {
            const Natural parent = nodes[idx].value;
            for (auto& m : preimages(parent, include_one)) {
                if (!seen.insert(m).second) continue;
                const bool odd_branch = m.is_odd();
                nodes.push_back({std::move(m), level, parent, odd_branch});
                next.push_back(nodes.size() - 1);
            }
        }
        frontier = std::move(next);
    }

    std::sort(nodes.begin(), nodes.end(), [](const BackwardNode& a, const BackwardNode& b) {
        return a.depth != b.depth ? a.depth < b.depth : a.value < b.value;
    });
    return nodes;
}

std::uint64_t pow2_minus1_mod3(std::uint64_t k) {
    if (k == 0) throw DomainError("pow2_minus1_mod3: k must be >= 1");
    return (Natural::pow2(k) - Natural(1)).mod_small(3);
}

Natural odd_quotient_by3(const Natural& x) {
    if (x.is_zero() || x.is_even()) throw DomainError("odd_quotient_by3: x must be odd");
    if (x.mod_small(3) != 0) throw DomainError("odd_quotient_by3: x must be divisible by 3");
    return x / Natural(3);
}

StageReport classify_stage(const Natural& start, std::uint64_t max_steps) {
    if (start.is_zero()) throw DomainError("classify_stage: start must be >= 1");

    StageReport r;
    r.start = start;
    const bool start_pow2 = is_power_of_two(start);

    Natural current = start;
    std::uint64_t index = 0;
    while (true) {
        if (!r.first_b_hit && in_set_b(current)) r.first_b_hit = StageHit{index, current};
        if (!r.first_a_hit && in_set_a(current)) r.first_a_hit = StageHit{index, current};
        if (!r.first_pow4_hit && is_power_of_two(current)) r.first_pow4_hit = StageHit{index, current};
        if (current.is_one()) {
            r.one_index = index;
            r.reached_one = true;
            break;
        }
        if (index == max_steps) break;
        current = step_standard(current);
        ++index;
    }

    bool ok = true;
    const auto& a = r.first_a_hit;
    const auto& b = r.first_b_hit;
    const auto& p = r.first_pow4_hit;
    if (start_pow2) {
        ok = !a && !b && p && p->index == 0;
    } else {
        if (a && p) {
            ok = ok && p->index == a->index + 1 && is_power_of_four(p->value) &&
                 a->value * Natural(3) + Natural(1) == p->value;
        }
        if (b) ok = ok && a && b->index + 1 == a->index && b->value == (a->value << 1);
        if (r.reached_one) ok = ok && a && p && (a->index == 0 || b);
    }
    r.pipeline_consistent = ok;
    return r;
}

}  // namespace collatz
