#include "lsat/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace lsat::dsl {

namespace {

// --- lexer -------------------------------------------------------------------

enum class Tok {
    Ident,
    Number,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Dot,
    Arrow,  // ->
    Dash,   // -
    Equals,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) { tokenize(); }

    const std::vector<Token>& tokens() const { return tokens_; }
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    void tokenize() {
        std::size_t i = 0;
        int line = 1, col = 1;
        auto advance = [&](std::size_t n) {
            for (std::size_t k = 0; k < n; ++k) {
                if (i < text_.size() && text_[i] == '\n') {
                    line++;
                    col = 1;
                } else {
                    col++;
                }
                i++;
            }
        };
        auto span = [&](int len) { return SourceSpan{file_, line, col, len}; };
        while (i < text_.size()) {
            const char c = text_[i];
            if (c == '/' && i + 1 < text_.size() && text_[i + 1] == '/') {
                while (i < text_.size() && text_[i] != '\n') advance(1);
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
                    j++;
                Token t{Tok::Ident, std::string(text_.substr(i, j - i)), 0.0,
                        span(static_cast<int>(j - i))};
                tokens_.push_back(std::move(t));
                advance(j - i);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '.' && i + 1 < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[i + 1])))) {
                std::size_t j = i;
                while (j < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[j])) ||
                                            text_[j] == '.' || text_[j] == 'e' || text_[j] == 'E' ||
                                            ((text_[j] == '+' || text_[j] == '-') && j > i &&
                                             (text_[j - 1] == 'e' || text_[j - 1] == 'E'))))
                    j++;
                Token t{Tok::Number, std::string(text_.substr(i, j - i)), 0.0,
                        span(static_cast<int>(j - i))};
                auto res = std::from_chars(text_.data() + i, text_.data() + j, t.number);
                if (res.ec != std::errc() || res.ptr != text_.data() + j) {
                    diags_.push_back({Code::P_SYNTAX, "", "malformed number '" + t.text + "'", t.span});
                    t.number = 0.0;
                }
                tokens_.push_back(std::move(t));
                advance(j - i);
                continue;
            }
            if (c == '-' && i + 1 < text_.size() && text_[i + 1] == '>') {
                tokens_.push_back({Tok::Arrow, "->", 0.0, span(2)});
                advance(2);
                continue;
            }
            Tok kind;
            switch (c) {
                case '{': kind = Tok::LBrace; break;
                case '}': kind = Tok::RBrace; break;
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case ',': kind = Tok::Comma; break;
                case ';': kind = Tok::Semi; break;
                case ':': kind = Tok::Colon; break;
                case '.': kind = Tok::Dot; break;
                case '-': kind = Tok::Dash; break;
                case '=': kind = Tok::Equals; break;
                default:
                    diags_.push_back({Code::P_SYNTAX, "",
                                      std::string("unexpected character '") + c + "'", span(1)});
                    advance(1);
                    continue;
            }
            tokens_.push_back({kind, std::string(1, c), 0.0, span(1)});
            advance(1);
        }
        tokens_.push_back({Tok::End, "", 0.0, span(0)});
    }

    std::string_view text_;
    std::string file_;
    std::vector<Token> tokens_;
    std::vector<Diagnostic> diags_;
};

// --- parser ------------------------------------------------------------------

class Parser {
public:
    Parser(std::string_view text, const std::string& file) : lexer_(text, file), file_(file) {
        for (const auto& d : lexer_.diagnostics()) result_.diagnostics.push_back(d);
    }

    ParseResult run() {
        bool saw_dispatch = false;
        while (!at(Tok::End)) {
            if (at_keyword("resource")) {
                parse_resource();
            } else if (at_keyword("activity")) {
                parse_activity();
            } else if (at_keyword("dispatch")) {
                if (saw_dispatch)
                    error(Code::P_DUPLICATE, "duplicate dispatch section", peek().span);
                saw_dispatch = true;
                parse_dispatch();
            } else if (at(Tok::Ident)) {
                error(Code::P_UNKNOWN_KEYWORD,
                      "unknown top-level keyword '" + peek().text + "'", peek().span);
                skip_block();
            } else {
                error(Code::P_SYNTAX, "expected a section keyword, found '" + peek().text + "'",
                      peek().span);
                skip_block();
            }
        }
        if (!saw_dispatch)
            error(Code::P_SYNTAX, "missing dispatch section", peek().span);
        return std::move(result_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const auto& ts = lexer_.tokens();
        return ts[std::min(pos_ + ahead, ts.size() - 1)];
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_keyword(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }
    Token take() {
        Token t = peek();
        if (!at(Tok::End)) pos_++;
        return t;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        pos_++;
        return true;
    }
    bool accept_keyword(const char* kw) {
        if (!at_keyword(kw)) return false;
        pos_++;
        return true;
    }
    void error(Code code, const std::string& msg, const SourceSpan& span) {
        result_.diagnostics.push_back({code, "", msg, span});
    }
    bool expect(Tok k, const char* what) {
        if (accept(k)) return true;
        error(Code::P_SYNTAX, std::string("expected ") + what + ", found '" +
                                  (at(Tok::End) ? "end of file" : peek().text) + "'",
              peek().span);
        return false;
    }
    std::optional<Token> expect_ident(const char* what) {
        if (at(Tok::Ident)) return take();
        error(Code::P_SYNTAX, std::string("expected ") + what + ", found '" +
                                  (at(Tok::End) ? "end of file" : peek().text) + "'",
              peek().span);
        return std::nullopt;
    }
    std::optional<double> expect_number(const char* what) {
        if (at(Tok::Number)) return take().number;
        error(Code::P_SYNTAX, std::string("expected ") + what + ", found '" +
                                  (at(Tok::End) ? "end of file" : peek().text) + "'",
              peek().span);
        return std::nullopt;
    }

    // skip to the end of the current (possibly brace-nested) construct
    void skip_block() {
        int depth = 0;
        while (!at(Tok::End)) {
            if (at(Tok::LBrace)) depth++;
            if (at(Tok::RBrace)) {
                depth--;
                take();
                if (depth <= 0) return;
                continue;
            }
            if (depth == 0 && at(Tok::Ident) &&
                (peek().text == "resource" || peek().text == "activity" || peek().text == "dispatch"))
                return;
            take();
        }
    }

    void note_duplicate(const std::string& what, const std::string& id, const SourceSpan& here,
                        const SourceSpan& previous) {
        result_.diagnostics.push_back(
            {Code::P_DUPLICATE, id,
             what + " '" + id + "' already defined at line " + std::to_string(previous.line) +
                 ", column " + std::to_string(previous.column),
             here});
    }

    // resource R { peripheral ... }
    void parse_resource() {
        take();  // resource
        auto name = expect_ident("resource name");
        if (!name) {
            skip_block();
            return;
        }
        if (auto it = resource_spans_.find(name->text); it != resource_spans_.end())
            note_duplicate("resource", name->text, name->span, it->second);
        resource_spans_.emplace(name->text, name->span);
        result_.entity_spans.emplace(name->text, name->span);
        result_.spec.resources.insert(name->text);
        if (!expect(Tok::LBrace, "'{'")) {
            skip_block();
            return;
        }
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (at_keyword("peripheral")) {
                parse_peripheral(name->text);
            } else {
                error(Code::P_UNKNOWN_KEYWORD,
                      "expected 'peripheral', found '" + peek().text + "'", peek().span);
                take();
            }
        }
        expect(Tok::RBrace, "'}'");
    }

    void parse_peripheral(const ResourceId& owner) {
        take();  // peripheral
        auto name = expect_ident("peripheral name");
        if (!name) return;
        if (auto it = peripheral_spans_.find(name->text); it != peripheral_spans_.end())
            note_duplicate("peripheral", name->text, name->span, it->second);
        peripheral_spans_.emplace(name->text, name->span);
        result_.entity_spans.emplace(name->text, name->span);

        Peripheral p;
        p.id = name->text;
        if (accept_keyword("unmovable")) {
            p.kind = parse_unmovable(p.id);
        } else if (accept_keyword("movable")) {
            p.kind = parse_movable(p.id);
        } else {
            error(Code::P_SYNTAX, "expected 'unmovable' or 'movable'", peek().span);
            skip_block();
            return;
        }
        result_.spec.peripherals[p.id] = std::move(p);
        result_.spec.owner[name->text] = owner;
    }

    UnmovablePeripheral parse_unmovable(const PeripheralId& pid) {
        UnmovablePeripheral u;
        if (!expect(Tok::LBrace, "'{'")) return u;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (!accept_keyword("action")) {
                error(Code::P_UNKNOWN_KEYWORD, "expected 'action', found '" + peek().text + "'",
                      peek().span);
                take();
                continue;
            }
            auto name = expect_ident("action name");
            if (!name) continue;
            check_action_name(name->text, pid, name->span);
            if (!accept_keyword("time")) {
                error(Code::P_SYNTAX, "expected 'time'", peek().span);
                continue;
            }
            if (auto t = parse_timing()) u.actions[name->text] = *t;
        }
        expect(Tok::RBrace, "'}'");
        return u;
    }

    std::optional<TimingSpec> parse_timing() {
        if (at(Tok::Number)) return TimingSpec{DeterministicTime{take().number}};
        if (at(Tok::Ident)) {
            const std::string kind = take().text;
            if (kind == "normal") {
                auto args = parse_args({"mu", "sigma"});
                if (!args) return std::nullopt;
                return TimingSpec{NormalTime{(*args)[0], (*args)[1]}};
            }
            if (kind == "triangular") {
                auto args = parse_args({"a", "m", "b"});
                if (!args) return std::nullopt;
                return TimingSpec{TriangularTime{(*args)[0], (*args)[1], (*args)[2]}};
            }
            if (kind == "pert") {
                auto args = parse_args({"a", "m", "b"});
                if (!args) return std::nullopt;
                return TimingSpec{PertTime{(*args)[0], (*args)[1], (*args)[2]}};
            }
            error(Code::P_UNKNOWN_KEYWORD, "unknown timing kind '" + kind + "'", peek().span);
            return std::nullopt;
        }
        error(Code::P_SYNTAX, "expected a time value or distribution", peek().span);
        return std::nullopt;
    }

    // (name=number, name=number, ...) with fixed parameter names
    std::optional<std::vector<double>> parse_args(const std::vector<std::string>& names) {
        if (!expect(Tok::LParen, "'('")) return std::nullopt;
        std::vector<double> out;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i && !expect(Tok::Comma, "','")) return std::nullopt;
            auto key = expect_ident("parameter name");
            if (!key) return std::nullopt;
            if (key->text != names[i]) {
                error(Code::P_SYNTAX, "expected parameter '" + names[i] + "', found '" + key->text + "'",
                      key->span);
                return std::nullopt;
            }
            if (!expect(Tok::Equals, "'='")) return std::nullopt;
            auto v = expect_number("parameter value");
            if (!v) return std::nullopt;
            out.push_back(*v);
        }
        if (!expect(Tok::RParen, "')'")) return std::nullopt;
        return out;
    }

    MovablePeripheral parse_movable(const PeripheralId& pid) {
        MovablePeripheral m;
        bool saw_positions = false;
        if (!expect(Tok::LBrace, "'{'")) return m;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (accept_keyword("positions")) {
                if (saw_positions)
                    error(Code::P_DUPLICATE, "duplicate positions block", peek().span);
                saw_positions = true;
                if (!expect(Tok::LBrace, "'{'")) continue;
                std::map<std::string, SourceSpan> pos_spans;
                while (at(Tok::Ident)) {
                    Token t = take();
                    if (auto it = pos_spans.find(t.text); it != pos_spans.end())
                        note_duplicate("position", t.text, t.span, it->second);
                    pos_spans.emplace(t.text, t.span);
                    m.positions.insert(t.text);
                    if (!accept(Tok::Comma)) break;
                }
                expect(Tok::RBrace, "'}'");
                continue;
            }
            if (accept_keyword("move")) {
                parse_move(pid, m);
                continue;
            }
            error(Code::P_UNKNOWN_KEYWORD,
                  "expected 'positions' or 'move', found '" + peek().text + "'", peek().span);
            take();
        }
        expect(Tok::RBrace, "'}'");
        if (m.positions.empty())
            error(Code::P_SYNTAX, "movable peripheral '" + pid + "' needs at least one position",
                  peek().span);
        return m;
    }

    void parse_move(const PeripheralId& pid, MovablePeripheral& m) {
        auto name = expect_ident("movement name");
        if (!name) return;
        check_action_name(name->text, pid, name->span);
        Movement mv;
        mv.id = name->text;
        if (!accept_keyword("from")) {
            error(Code::P_SYNTAX, "expected 'from'", peek().span);
            return;
        }
        if (auto s = expect_ident("source position")) mv.source = s->text; else return;
        if (!accept_keyword("to")) {
            error(Code::P_SYNTAX, "expected 'to'", peek().span);
            return;
        }
        if (auto t = expect_ident("target position")) mv.target = t->text; else return;
        if (!accept_keyword("profile")) {
            error(Code::P_SYNTAX, "expected 'profile'", peek().span);
            return;
        }
        if (accept_keyword("second")) {
            auto args = parse_args({"v", "a"});
            if (!args) return;
            mv.profile = SecondOrderProfile{(*args)[0], (*args)[1]};
        } else if (accept_keyword("third")) {
            auto args = parse_args({"v", "a", "j"});
            if (!args) return;
            mv.profile = ThirdOrderProfile{(*args)[0], (*args)[1], (*args)[2]};
        } else {
            error(Code::P_SYNTAX, "expected 'second' or 'third'", peek().span);
            return;
        }
        bool saw_distance = false, saw_settling = false;
        while (true) {
            if (at_keyword("distance")) {
                take();
                if (saw_distance) error(Code::P_DUPLICATE, "duplicate distance", peek().span);
                saw_distance = true;
                if (auto v = expect_number("distance")) mv.distance = *v;
            } else if (at_keyword("settling")) {
                take();
                if (saw_settling) error(Code::P_DUPLICATE, "duplicate settling", peek().span);
                saw_settling = true;
                if (auto v = expect_number("settling time")) mv.settling = *v;
            } else {
                break;
            }
        }
        m.moves[mv.id] = std::move(mv);
    }

    // action / movement ids share one global namespace: an action belongs to
    // exactly one peripheral
    void check_action_name(const ActionId& a, const PeripheralId& pid, const SourceSpan& span) {
        auto it = action_spans_.find(a);
        if (it != action_spans_.end())
            note_duplicate("action", a, span, it->second);
        action_spans_.emplace(a, span);
        result_.entity_spans.emplace(pid + "." + a, span);
    }

    void parse_activity() {
        take();  // activity
        auto name = expect_ident("activity name");
        if (!name) {
            skip_block();
            return;
        }
        if (auto it = activity_spans_.find(name->text); it != activity_spans_.end())
            note_duplicate("activity", name->text, name->span, it->second);
        activity_spans_.emplace(name->text, name->span);
        result_.entity_spans.emplace(name->text, name->span);

        Activity act;
        act.id = name->text;
        if (!expect(Tok::LBrace, "'{'")) {
            skip_block();
            return;
        }
        bool saw_nodes = false, saw_flow = false;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (accept_keyword("nodes")) {
                if (saw_nodes) error(Code::P_DUPLICATE, "duplicate nodes block", peek().span);
                saw_nodes = true;
                parse_nodes(act);
            } else if (accept_keyword("flow")) {
                if (saw_flow) error(Code::P_DUPLICATE, "duplicate flow block", peek().span);
                saw_flow = true;
                parse_flow(act);
            } else {
                error(Code::P_UNKNOWN_KEYWORD,
                      "expected 'nodes' or 'flow', found '" + peek().text + "'", peek().span);
                take();
            }
        }
        expect(Tok::RBrace, "'}'");
        result_.spec.activities[act.id] = std::move(act);
    }

    void parse_nodes(Activity& act) {
        if (!expect(Tok::LBrace, "'{'")) return;
        std::map<std::string, SourceSpan> node_spans;
        while (at(Tok::Ident)) {
            Token id = take();
            if (auto it = node_spans.find(id.text); it != node_spans.end())
                note_duplicate("node", id.text, id.span, it->second);
            node_spans.emplace(id.text, id.span);
            result_.entity_spans.emplace(act.id + "." + id.text, id.span);
            if (!expect(Tok::Colon, "':'")) break;
            if (accept_keyword("claim")) {
                if (auto r = expect_ident("resource name"))
                    act.nodes[id.text] = ClaimNode{r->text};
            } else if (accept_keyword("release")) {
                if (auto r = expect_ident("resource name"))
                    act.nodes[id.text] = ReleaseNode{r->text};
            } else if (at(Tok::Ident)) {
                Token p = take();
                if (!expect(Tok::Dot, "'.'")) break;
                if (auto a = expect_ident("action name"))
                    act.nodes[id.text] = ActionNode{a->text, p.text};
            } else {
                error(Code::P_SYNTAX, "expected 'claim', 'release' or peripheral.action",
                      peek().span);
                break;
            }
        }
        expect(Tok::RBrace, "'}'");
    }

    // chains: n1 -> n3 -> n5   n2 -> n4
    void parse_flow(Activity& act) {
        if (!expect(Tok::LBrace, "'{'")) return;
        while (at(Tok::Ident)) {
            Token from = take();
            if (!at(Tok::Arrow))
                error(Code::P_SYNTAX, "expected '->' after node '" + from.text + "'", peek().span);
            while (accept(Tok::Arrow)) {
                auto to = expect_ident("node name");
                if (!to) break;
                act.edges.insert({from.text, to->text});
                from = *to;
            }
        }
        expect(Tok::RBrace, "'}'");
    }

    void parse_dispatch() {
        take();  // dispatch
        if (accept_keyword("sequence")) {
            parse_dispatch_sequence();
        } else if (accept_keyword("fsa")) {
            parse_dispatch_fsa();
        } else {
            error(Code::P_SYNTAX, "expected 'sequence' or 'fsa'", peek().span);
            skip_block();
        }
    }

    void parse_dispatch_sequence() {
        DispatchingSequence seq;
        if (!expect(Tok::LBrace, "'{'")) return;
        bool saw_repeat = false;
        bool expect_item = true;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (!expect_item) {
                if (!expect(Tok::Semi, "';'")) break;
                expect_item = true;
                continue;
            }
            if (accept_keyword("repeat")) {
                if (saw_repeat) error(Code::P_DUPLICATE, "duplicate repeat block", peek().span);
                saw_repeat = true;
                if (!expect(Tok::LBrace, "'{'")) break;
                bool inner_item = true;
                while (!at(Tok::RBrace) && !at(Tok::End)) {
                    if (!inner_item) {
                        if (!expect(Tok::Semi, "';'")) break;
                        inner_item = true;
                        continue;
                    }
                    if (auto a = expect_ident("activity name")) {
                        seq.periodic.items.push_back(a->text);
                        inner_item = false;
                    } else {
                        break;
                    }
                }
                expect(Tok::RBrace, "'}'");
                if (!at(Tok::RBrace))
                    error(Code::P_SYNTAX, "repeat block must end the sequence", peek().span);
                break;
            }
            if (auto a = expect_ident("activity name or 'repeat'")) {
                seq.transient.items.push_back(a->text);
                expect_item = false;
            } else {
                break;
            }
        }
        expect(Tok::RBrace, "'}'");
        result_.spec.dispatch = std::move(seq);
    }

    void parse_dispatch_fsa() {
        DispatchFSA fsa;
        if (!expect(Tok::LBrace, "'{'")) return;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (accept_keyword("states")) {
                if (!expect(Tok::LBrace, "'{'")) continue;
                std::map<std::string, SourceSpan> state_spans;
                while (at(Tok::Ident)) {
                    Token t = take();
                    if (auto it = state_spans.find(t.text); it != state_spans.end())
                        note_duplicate("state", t.text, t.span, it->second);
                    state_spans.emplace(t.text, t.span);
                    fsa.states.insert(t.text);
                    if (!accept(Tok::Comma)) break;
                }
                expect(Tok::RBrace, "'}'");
            } else if (accept_keyword("initial")) {
                if (auto s = expect_ident("state name")) fsa.initial.insert(s->text);
            } else if (accept_keyword("edge")) {
                auto from = expect_ident("source state");
                if (!from) continue;
                if (!expect(Tok::Dash, "'-'")) continue;
                auto label = expect_ident("activity name");
                if (!label) continue;
                if (!expect(Tok::Arrow, "'->'")) continue;
                auto to = expect_ident("target state");
                if (!to) continue;
                fsa.transitions.insert({from->text, label->text, to->text});
            } else {
                error(Code::P_UNKNOWN_KEYWORD,
                      "expected 'states', 'initial' or 'edge', found '" + peek().text + "'",
                      peek().span);
                take();
            }
        }
        expect(Tok::RBrace, "'}'");
        result_.spec.dispatch = std::move(fsa);
    }

    Lexer lexer_;
    std::string file_;
    std::size_t pos_ = 0;
    ParseResult result_;
    std::map<std::string, SourceSpan> resource_spans_;
    std::map<std::string, SourceSpan> peripheral_spans_;
    std::map<std::string, SourceSpan> activity_spans_;
    std::map<std::string, SourceSpan> action_spans_;
};

}  // namespace

ParseResult parse(std::string_view text, const std::string& file) {
    return Parser(text, file).run();
}

// --- pretty printer -------------------------------------------------------------

namespace {

std::string num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void print_timing(std::ostringstream& os, const TimingSpec& t) {
    if (auto* d = std::get_if<DeterministicTime>(&t)) {
        os << num(d->t);
    } else if (auto* n = std::get_if<NormalTime>(&t)) {
        os << "normal(mu=" << num(n->mu) << ", sigma=" << num(n->sigma) << ")";
    } else if (auto* tr = std::get_if<TriangularTime>(&t)) {
        os << "triangular(a=" << num(tr->a) << ", m=" << num(tr->m) << ", b=" << num(tr->b) << ")";
    } else {
        const auto& p = std::get<PertTime>(t);
        os << "pert(a=" << num(p.a) << ", m=" << num(p.m) << ", b=" << num(p.b) << ")";
    }
}

void print_peripheral(std::ostringstream& os, const Peripheral& p) {
    if (auto* u = std::get_if<UnmovablePeripheral>(&p.kind)) {
        os << "  peripheral " << p.id << " unmovable {\n";
        for (const auto& [a, t] : u->actions) {
            os << "    action " << a << " time ";
            print_timing(os, t);
            os << "\n";
        }
        os << "  }\n";
        return;
    }
    const auto& m = std::get<MovablePeripheral>(p.kind);
    os << "  peripheral " << p.id << " movable {\n";
    os << "    positions { ";
    bool first = true;
    for (const auto& pos : m.positions) {
        if (!first) os << ", ";
        os << pos;
        first = false;
    }
    os << " }\n";
    for (const auto& [id, mv] : m.moves) {
        os << "    move " << id << " from " << mv.source << " to " << mv.target << " profile ";
        if (auto* s = std::get_if<SecondOrderProfile>(&mv.profile))
            os << "second(v=" << num(s->vmax) << ", a=" << num(s->amax) << ")";
        else {
            const auto& t = std::get<ThirdOrderProfile>(mv.profile);
            os << "third(v=" << num(t.vmax) << ", a=" << num(t.amax) << ", j=" << num(t.jmax) << ")";
        }
        os << " distance " << num(mv.distance) << " settling " << num(mv.settling) << "\n";
    }
    os << "  }\n";
}

void print_items(std::ostringstream& os, const std::vector<ActivityId>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) os << " ; ";
        os << items[i];
    }
}

}  // namespace

std::string pretty_print(const Specification& spec) {
    std::ostringstream os;
    // group peripherals under their owner, resources sorted by id
    for (const auto& r : spec.resources) {
        os << "resource " << r << " {\n";
        for (const auto& [pid, p] : spec.peripherals) {
            auto owner = spec.owner.find(pid);
            if (owner != spec.owner.end() && owner->second == r) print_peripheral(os, p);
        }
        os << "}\n\n";
    }
    for (const auto& [aid, act] : spec.activities) {
        os << "activity " << aid << " {\n";
        os << "  nodes {\n";
        for (const auto& [n, kind] : act.nodes) {
            os << "    " << n << ": ";
            if (auto* c = std::get_if<ClaimNode>(&kind))
                os << "claim " << c->resource;
            else if (auto* rel = std::get_if<ReleaseNode>(&kind))
                os << "release " << rel->resource;
            else {
                const auto& a = std::get<ActionNode>(kind);
                os << a.peripheral << "." << a.action;
            }
            os << "\n";
        }
        os << "  }\n";
        os << "  flow {\n";
        for (const auto& [from, to] : act.edges) os << "    " << from << " -> " << to << "\n";
        os << "  }\n";
        os << "}\n\n";
    }
    if (auto* seq = std::get_if<DispatchingSequence>(&spec.dispatch)) {
        os << "dispatch sequence { ";
        print_items(os, seq->transient.items);
        if (!seq->periodic.empty()) {
            if (!seq->transient.empty()) os << " ; ";
            os << "repeat { ";
            print_items(os, seq->periodic.items);
            os << " }";
        }
        os << " }\n";
    } else {
        const auto& fsa = std::get<DispatchFSA>(spec.dispatch);
        os << "dispatch fsa {\n";
        os << "  states { ";
        bool first = true;
        for (const auto& s : fsa.states) {
            if (!first) os << ", ";
            os << s;
            first = false;
        }
        os << " }\n";
        for (const auto& s : fsa.initial) os << "  initial " << s << "\n";
        for (const auto& [from, label, to] : fsa.transitions)
            os << "  edge " << from << " -" << label << "-> " << to << "\n";
        os << "}\n";
    }
    return os.str();
}

// --- trace files --------------------------------------------------------------

TraceParse parse_trace(std::string_view text, const std::string& file) {
    TraceParse out;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        line_no++;
        start = end + 1;

        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            if (start > text.size()) break;
            continue;
        }
        if (line[first] == '#') continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        auto ev = parse_event_text(body);
        if (!ev) {
            out.error = Diagnostic{Code::P_SYNTAX, "", "malformed event '" + body + "'",
                                   SourceSpan{file, line_no, static_cast<int>(first) + 1,
                                              static_cast<int>(body.size())}};
            return out;
        }
        out.events.emplace_back(line_no, *ev);
        if (start > text.size()) break;
    }
    return out;
}

}  // namespace lsat::dsl
