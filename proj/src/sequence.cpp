#include "lsat/sequence.hpp"

#include <algorithm>

namespace lsat {

ActivitySequence concat(const ActivitySequence& w1, const ActivitySequence& w2) {
    ActivitySequence out = w1;
    out.items.insert(out.items.end(), w2.items.begin(), w2.items.end());
    return out;
}

ActivitySequence power(const ActivitySequence& w, int n) {
    if (n < 0) throw Error(Code::E_NEGATIVE_POWER, "sequence power requires n >= 0");
    ActivitySequence out;
    out.items.reserve(w.items.size() * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out = concat(out, w);
    return out;
}

std::set<ActivitySequence> prefixes(const ActivitySequence& w) {
    std::set<ActivitySequence> out;
    ActivitySequence p;
    out.insert(p);
    for (const auto& a : w.items) {
        p.items.push_back(a);
        out.insert(p);
    }
    return out;
}

ActivitySequence reduce_for_resource(const ActivitySequence& w, const ResourceId& r,
                                     const Specification& spec) {
    ActivitySequence out;
    for (const auto& a : w.items) {
        const Activity* act = spec.find_activity(a);
        if (!act) throw Error(Code::E_UNKNOWN_REF, "sequence references unknown activity '" + a + "'");
        if (act->resources().count(r)) out.items.push_back(a);
    }
    return out;
}

int instance_index(const ActivitySequence& history, const ActivityId& act) {
    return 1 + static_cast<int>(std::count(history.items.begin(), history.items.end(), act));
}

PeriodicView::PeriodicView(ActivitySequence head, ActivitySequence cycle)
    : head_(std::move(head)), cycle_(std::move(cycle)) {}

std::optional<ActivityId> PeriodicView::item(std::size_t k) const {
    if (k < head_.size()) return head_.items[k];
    if (cycle_.empty()) return std::nullopt;
    return cycle_.items[(k - head_.size()) % cycle_.size()];
}

std::size_t PeriodicView::count_prefix(std::size_t k, const ActivityId& act) const {
    auto count_in = [&](const ActivitySequence& w, std::size_t upto) {
        upto = std::min(upto, w.size());
        return static_cast<std::size_t>(
            std::count(w.items.begin(), w.items.begin() + static_cast<long>(upto), act));
    };
    std::size_t total = count_in(head_, k);
    if (k <= head_.size() || cycle_.empty()) return total;
    const std::size_t tail = k - head_.size();
    total += (tail / cycle_.size()) * count_in(cycle_, cycle_.size());
    total += count_in(cycle_, tail % cycle_.size());
    return total;
}

std::optional<ActivityInstance> seq_item(const DispatchingSequence& seq, long long k) {
    if (k < 1) throw Error(Code::E_INDEX, "sequence positions are 1-based");
    PeriodicView view(seq.transient, seq.periodic);
    const auto pos = static_cast<std::size_t>(k - 1);
    auto act = view.item(pos);
    if (!act) return std::nullopt;
    return ActivityInstance{*act, static_cast<int>(1 + view.count_prefix(pos, *act))};
}

PrefixStream::PrefixStream(DispatchingSequence seq) : seq_(std::move(seq)) {}

bool PrefixStream::exhausted() const {
    return seq_.periodic.empty() && emitted_ > seq_.transient.size();
}

std::optional<ActivitySequence> PrefixStream::next() {
    if (exhausted()) return std::nullopt;
    // Lengths are strictly increasing, so every sequence is produced once:
    // first the prefixes of the transient part, then one extension per length.
    if (emitted_ == 0) {
        emitted_ = 1;
        return current_;  // eps
    }
    std::size_t pos = emitted_ - 1;  // index of the next item to append
    ActivityId next_item;
    if (pos < seq_.transient.size()) {
        next_item = seq_.transient.items[pos];
    } else {
        next_item = seq_.periodic.items[(pos - seq_.transient.size()) % seq_.periodic.size()];
    }
    current_.items.push_back(next_item);
    emitted_++;
    return current_;
}

std::string to_text(const ActivitySequence& w) {
    if (w.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.items.size(); ++i) {
        if (i) out += " ; ";
        out += w.items[i];
    }
    return out;
}

std::string to_text(const DispatchingSequence& seq) {
    if (seq.periodic.empty()) return to_text(seq.transient);
    std::string tail = "(" + to_text(seq.periodic) + ")^w";
    if (seq.transient.empty()) return tail;
    return to_text(seq.transient) + " ; " + tail;
}

namespace {

std::vector<std::string> split_items(const std::string& text, bool& ok) {
    // tokens: identifiers and ';', which must strictly alternate
    std::vector<std::string> tokens;
    std::string cur;
    ok = true;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            cur += c;
        } else {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
            if (c == ';')
                tokens.push_back(";");
            else if (!std::isspace(static_cast<unsigned char>(c)))
                ok = false;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);

    std::vector<std::string> items;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const bool want_sep = (i % 2 == 1);
        if (want_sep != (tokens[i] == ";")) ok = false;
        if (!want_sep) items.push_back(tokens[i]);
    }
    if (!tokens.empty() && tokens.back() == ";") ok = false;
    return items;
}

}  // namespace

std::optional<DispatchingSequence> sequence_from_text(const std::string& text) {
    std::string s = text;
    auto trim = [](std::string& t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    };
    trim(s);
    DispatchingSequence seq;
    if (s.empty() || s == "eps") return seq;

    std::string head = s, cycle;
    auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.size() < open + 3 || s.substr(s.size() - 2) != "^w") return std::nullopt;
        auto close = s.rfind(')');
        if (close == std::string::npos || close != s.size() - 3) return std::nullopt;
        cycle = s.substr(open + 1, close - open - 1);
        head = s.substr(0, open);
        trim(head);
        if (!head.empty()) {
            if (head.back() != ';') return std::nullopt;
            head.pop_back();
        }
    }
    bool ok = true;
    seq.transient.items = split_items(head, ok);
    if (!ok) return std::nullopt;
    if (!cycle.empty()) {
        seq.periodic.items = split_items(cycle, ok);
        if (!ok || seq.periodic.items.empty()) return std::nullopt;
    }
    return seq;
}

}  // namespace lsat
