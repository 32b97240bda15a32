#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lsat/model.hpp"

namespace lsat {

using InstanceSequence = std::vector<ActivityInstance>;

ActivitySequence concat(const ActivitySequence& w1, const ActivitySequence& w2);

// n-fold self-concatenation; power(w, 0) is the empty sequence.
// Throws Error{E_NEGATIVE_POWER} for n < 0.
ActivitySequence power(const ActivitySequence& w, int n);

// {eps} plus every w(1:i).
std::set<ActivitySequence> prefixes(const ActivitySequence& w);

// Keeps exactly the items whose activity uses resource r, order preserved.
// Throws Error{E_UNKNOWN_REF} for undefined activities.
ActivitySequence reduce_for_resource(const ActivitySequence& w, const ResourceId& r,
                                     const Specification& spec);

// 1 + number of occurrences of act in history: the instance number the next
// occurrence of act would get.
int instance_index(const ActivitySequence& history, const ActivityId& act);

// Random access into transient;(periodic)^inf with closed-form occurrence
// counting, so position k never costs O(k).
class PeriodicView {
public:
    PeriodicView(ActivitySequence head, ActivitySequence cycle);

    // 0-based; nullopt once a finite view is exhausted.
    std::optional<ActivityId> item(std::size_t k) const;
    // occurrences of act among items 0..k-1
    std::size_t count_prefix(std::size_t k, const ActivityId& act) const;
    bool finite() const { return cycle_.empty(); }
    std::size_t head_size() const { return head_.size(); }

private:
    ActivitySequence head_;
    ActivitySequence cycle_;
};

// The k-th (1-based) dispatched activity together with its instance number.
// nullopt = end of a finite sequence. Throws Error{E_INDEX} for k < 1.
std::optional<ActivityInstance> seq_item(const DispatchingSequence& seq, long long k);

// Enumerates prefix(transient) followed by transient;(periodic)^n;p for
// growing n, in nondecreasing length order and without duplicates. Infinite
// iff the periodic part is nonempty.
class PrefixStream {
public:
    explicit PrefixStream(DispatchingSequence seq);

    std::optional<ActivitySequence> next();
    bool exhausted() const;

private:
    DispatchingSequence seq_;
    std::size_t emitted_ = 0;  // number of sequences already produced
    ActivitySequence current_;
};

// Renderings: "ActA ; (ActB ; ActC)^w", "(ActB)^w", "ActA ; ActB", "eps".
std::string to_text(const ActivitySequence& w);
std::string to_text(const DispatchingSequence& seq);
std::optional<DispatchingSequence> sequence_from_text(const std::string& text);

}  // namespace lsat
