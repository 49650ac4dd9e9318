#include "gecsyn/aligner.hpp"

#include <algorithm>
#include <string>

#include "gecsyn/error.hpp"

namespace gecsyn {

namespace {

constexpr double kEps = 1e-9;

struct Cell {
    double cost = 0.0;
    std::size_t ops = 0;
    OpKind kind = OpKind::Match;
    std::size_t length = 1; // block length for transpositions
};

bool better(double cost, std::size_t ops, const Cell &best) {
    if (cost < best.cost - kEps) return true;
    return cost <= best.cost + kEps && ops < best.ops;
}

bool same_multiset(const Sentence &a, std::size_t a_end, const Sentence &b, std::size_t b_end, std::size_t k) {
    std::vector<std::string_view> x, y;
    bool identical = true;
    for (std::size_t t = 0; t < k; ++t) {
        x.push_back(a[a_end - k + t].surface);
        y.push_back(b[b_end - k + t].surface);
        identical = identical && x.back() == y.back();
    }
    if (identical) return false;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

bool touches_punct(const AlignmentOp &op, const Sentence &source, const Sentence &target) {
    for (auto i = op.src.begin; i < op.src.end; ++i) {
        if (source[i].pos == Pos::Punct) return true;
    }
    for (auto j = op.tgt.begin; j < op.tgt.end; ++j) {
        if (target[j].pos == Pos::Punct) return true;
    }
    return false;
}

bool shares_lemma(const Sentence &a, TokenSpan as, const Sentence &b, TokenSpan bs) {
    for (auto i = as.begin; i < as.end; ++i) {
        if (a[i].pos == Pos::Punct) continue;
        for (auto j = bs.begin; j < bs.end; ++j) {
            if (b[j].pos != Pos::Punct && a[i].lemma == b[j].lemma) return true;
        }
    }
    return false;
}

bool same_lemma_substitution(const AlignmentOp &op, const Sentence &source, const Sentence &target) {
    return op.kind == OpKind::Substitute && source[op.src.begin].lemma == target[op.tgt.begin].lemma;
}

bool is_indel(const AlignmentOp &op) { return op.kind == OpKind::Insert || op.kind == OpKind::Delete; }

} // namespace

std::string_view op_name(OpKind kind) {
    switch (kind) {
    case OpKind::Match:
        return "match";
    case OpKind::Substitute:
        return "substitute";
    case OpKind::Insert:
        return "insert";
    case OpKind::Delete:
        return "delete";
    case OpKind::Transpose:
        return "transpose";
    }
    return "?";
}

double substitution_cost(const AnnotatedToken &a, const AnnotatedToken &b, const AlignmentCosts &costs) {
    if (a.surface == b.surface) return 0.0;
    double c = costs.substitute;
    if (a.lemma == b.lemma) c -= costs.same_lemma_discount;
    if (a.pos == b.pos) c -= costs.same_pos_discount;
    return std::max(c, costs.substitute_floor);
}

Alignment align(const Sentence &source, const Sentence &target, const AlignmentCosts &costs) {
    if (source.empty() || target.empty()) throw EmptyInputError("cannot align an empty sentence");
    const std::size_t n = source.size(), m = target.size();
    std::vector<std::vector<Cell>> dp(n + 1, std::vector<Cell>(m + 1));

    for (std::size_t i = 1; i <= n; ++i) dp[i][0] = {dp[i - 1][0].cost + costs.indel, i, OpKind::Delete, 1};
    for (std::size_t j = 1; j <= m; ++j) dp[0][j] = {dp[0][j - 1].cost + costs.indel, j, OpKind::Insert, 1};

    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            Cell best{1e300, SIZE_MAX, OpKind::Match, 1};
            auto consider = [&](const Cell &from, double step, OpKind kind, std::size_t length) {
                if (better(from.cost + step, from.ops + 1, best)) best = {from.cost + step, from.ops + 1, kind, length};
            };
            // Candidates in tie-break priority: on equal (cost, ops) the earlier one is kept,
            // so substitutions end up as far left as possible.
            if (source[i - 1].surface == target[j - 1].surface) consider(dp[i - 1][j - 1], 0.0, OpKind::Match, 1);
            for (std::size_t k = 2; k <= costs.max_transpose && k <= i && k <= j; ++k) {
                if (same_multiset(source, i, target, j, k)) {
                    consider(dp[i - k][j - k], static_cast<double>(k) - costs.transpose_discount, OpKind::Transpose, k);
                }
            }
            consider(dp[i - 1][j], costs.indel, OpKind::Delete, 1);
            consider(dp[i][j - 1], costs.indel, OpKind::Insert, 1);
            if (source[i - 1].surface != target[j - 1].surface) {
                consider(dp[i - 1][j - 1], substitution_cost(source[i - 1], target[j - 1], costs), OpKind::Substitute, 1);
            }
            dp[i][j] = best;
        }
    }

    Alignment out;
    out.cost = dp[n][m].cost;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        const Cell &c = dp[i][j];
        switch (c.kind) {
        case OpKind::Match:
        case OpKind::Substitute:
            out.ops.push_back({c.kind, {i - 1, i}, {j - 1, j}});
            --i;
            --j;
            break;
        case OpKind::Delete:
            out.ops.push_back({c.kind, {i - 1, i}, {j, j}});
            --i;
            break;
        case OpKind::Insert:
            out.ops.push_back({c.kind, {i, i}, {j - 1, j}});
            --j;
            break;
        case OpKind::Transpose:
            out.ops.push_back({c.kind, {i - c.length, i}, {j - c.length, j}});
            i -= c.length;
            j -= c.length;
            break;
        }
    }
    std::reverse(out.ops.begin(), out.ops.end());
    return out;
}

double alignment_cost(std::span<const AlignmentOp> ops, const Sentence &source, const Sentence &target,
                      const AlignmentCosts &costs) {
    double total = 0.0;
    for (const auto &op : ops) {
        switch (op.kind) {
        case OpKind::Match:
            break;
        case OpKind::Substitute:
            total += substitution_cost(source[op.src.begin], target[op.tgt.begin], costs);
            break;
        case OpKind::Insert:
        case OpKind::Delete:
            total += costs.indel;
            break;
        case OpKind::Transpose:
            total += static_cast<double>(op.src.size()) - costs.transpose_discount;
            break;
        }
    }
    return total;
}

std::vector<Edit> extract_edits(std::span<const AlignmentOp> ops, const Sentence &source, const Sentence &target) {
    std::vector<Edit> edits;

    struct Group {
        TokenSpan src, tgt;
        AlignmentOp last;
    };
    Group current{};
    bool open = false;
    Group *group = nullptr;

    auto flush = [&] {
        if (!open) return;
        Edit e;
        e.start = group->src.begin;
        e.end = group->src.end;
        e.replacement.assign(target.tokens().begin() + static_cast<std::ptrdiff_t>(group->tgt.begin),
                             target.tokens().begin() + static_cast<std::ptrdiff_t>(group->tgt.end));
        edits.push_back(std::move(e));
        open = false;
        group = nullptr;
    };
    auto start = [&](const AlignmentOp &op) {
        current = Group{op.src, op.tgt, op};
        open = true;
        group = &current;
    };

    for (const auto &op : ops) {
        if (op.kind == OpKind::Match) {
            flush();
            continue;
        }
        if (op.kind == OpKind::Transpose) {
            flush();
            start(op);
            flush();
            continue;
        }
        if (open) {
            const bool punct = touches_punct(group->last, source, target) && touches_punct(op, source, target);
            const bool cross = shares_lemma(source, op.src, target, group->tgt) ||
                               shares_lemma(target, op.tgt, source, group->src);
            const bool indel_next_to_lemma_sub =
                (is_indel(op) && same_lemma_substitution(group->last, source, target)) ||
                (is_indel(group->last) && same_lemma_substitution(op, source, target));
            if (punct || cross || indel_next_to_lemma_sub) {
                group->src.end = op.src.end;
                group->tgt.end = op.tgt.end;
                group->last = op;
                continue;
            }
            flush();
        }
        start(op);
    }
    flush();
    return edits;
}

} // namespace gecsyn
