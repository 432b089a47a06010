/*
 * Copyright 2026 The epcalc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>

#include "epcalc/error.hpp"
#include "langspec.hpp"

namespace epcalc::detail {

namespace {

class LangParser {
public:
  LangParser(const std::string& text, std::string source)
      : ts_(tokenize(text, true)) {
    spec_.source_name = std::move(source);
  }

  LangSpec run() {
    for (;;) {
      ts_.skip_newlines();
      if (ts_.at(Tok::End)) break;
      if (!ts_.at(Tok::Ident)) ts_.fail("expected a directive");
      std::string kw = ts_.next().text;
      if (kw == "language") {
        spec_.name = ts_.expect_ident();
      } else if (kw == "channels") {
        names_into(spec_.alphabets.channels);
      } else if (kw == "broadcasts") {
        names_into(spec_.alphabets.broadcasts);
      } else if (kw == "signals") {
        names_into(spec_.alphabets.signals);
      } else if (kw == "actions") {
        classes_into(spec_.action_classes);
      } else if (kw == "indicators") {
        classes_into(spec_.indicator_classes);
      } else if (kw == "operators") {
        while (ts_.at(Tok::Ident)) spec_.kinds.insert(kind_of(ts_.next().text));
      } else if (kw == "operator") {
        std::string sym = ts_.expect_ident();
        ts_.expect_sym("/");
        if (!ts_.at(Tok::Number)) ts_.fail("expected arity");
        spec_.custom[sym] = std::stoi(ts_.next().text);
        spec_.kinds.insert(OpKind::Custom);
      } else if (kw == "rule") {
        rule_block();
        continue;
      } else if (kw == "succ") {
        succ_block();
        continue;
      } else if (kw == "meta") {
        meta_block();
        continue;
      } else {
        ts_.fail("unknown directive '" + kw + "'");
      }
      end_line();
    }
    if (spec_.name.empty()) throw ParseError("missing 'language' directive", 1);
    return std::move(spec_);
  }

private:
  TokenStream ts_;
  LangSpec spec_;

  void end_line() {
    if (!ts_.at(Tok::Newline) && !ts_.at(Tok::End)) ts_.fail("expected end of line");
    ts_.skip_newlines();
  }

  void names_into(std::set<std::string>& out) {
    while (ts_.at(Tok::Ident)) out.insert(ts_.next().text);
  }

  void classes_into(std::vector<std::string>& out) {
    while (ts_.at(Tok::Ident) || ts_.at(Tok::CoName) || ts_.at(Tok::BLabel)) {
      std::string c = ts_.next().text;
      if (!label_class({}, c)) ts_.fail("unknown label class '" + c + "'");
      out.push_back(c);
    }
  }

  OpKind kind_of(const std::string& w) {
    static const std::map<std::string, OpKind> m = {
        {"nil", OpKind::Nil},         {"prefix", OpKind::Prefix},
        {"choice", OpKind::Choice},   {"parallel", OpKind::Parallel},
        {"restrict", OpKind::Restrict}, {"relabel", OpKind::Relabel},
        {"signal", OpKind::Signal}};
    auto it = m.find(w);
    if (it == m.end()) ts_.fail("unknown operator kind '" + w + "'");
    return it->second;
  }

  // -- label and set expressions ------------------------------------------

  LabExpr lab_expr() {
    LabExpr e;
    const Token& t = ts_.peek();
    if (t.kind == Tok::CoName) {
      e.kind = LabExpr::Kind::Co;
      LabExpr inner;
      inner.name = ts_.next().text.substr(1);
      e.kids.push_back(std::move(inner));
      return e;
    }
    if (t.kind == Tok::BLabel) {
      std::string s = ts_.next().text;
      e.kind = LabExpr::Kind::Mode;
      e.name = s.substr(0, s.size() - 1);
      e.modes.push_back(std::string(1, s.back()));
      return e;
    }
    if (t.kind != Tok::Ident) ts_.fail("expected a label expression");
    e.name = ts_.next().text;
    if (ts_.at_sym("(")) {
      ts_.next();
      e.kind = LabExpr::Kind::Apply;
      e.kids.push_back(lab_expr());
      ts_.expect_sym(")");
    } else if (ts_.at_sym("{")) {
      ts_.next();
      e.kind = LabExpr::Kind::Mode;
      e.modes.push_back(mode_token());
      if (ts_.at_sym("*")) {
        ts_.next();
        e.modes.push_back(mode_token());
      }
      ts_.expect_sym("}");
    }
    return e;
  }

  std::string mode_token() {
    if (ts_.at(Tok::Ident)) return ts_.next().text;
    for (const char* m : {"!", "?", ":"})
      if (ts_.at_sym(m)) return ts_.next().text;
    ts_.fail("expected a broadcast mode");
  }

  SetAtom set_atom() {
    SetAtom a;
    if (ts_.at_sym("{")) {
      ts_.next();
      a.kind = SetAtom::Kind::Enum;
      if (!ts_.at_sym("}")) {
        for (;;) {
          a.items.push_back(lab_expr());
          if (!ts_.at_sym(",")) break;
          ts_.next();
        }
      }
      ts_.expect_sym("}");
      return a;
    }
    static const std::set<std::string> classes = {"Ch", "'Ch", "tau", "B!", "B?", "B:", "Sig",
                                                  "'Sig", "Act", "Lab", "In", "B", "Modes"};
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident && t.kind != Tok::CoName && t.kind != Tok::BLabel)
      ts_.fail("expected a set expression");
    a.name = ts_.next().text;
    if (classes.count(a.name)) {
      a.kind = SetAtom::Kind::Class;
    } else if (t.kind == Tok::CoName) {
      a.kind = SetAtom::Kind::CoMeta;
      a.name = a.name.substr(1);
    } else if (t.kind == Tok::Ident) {
      a.kind = SetAtom::Kind::Meta;
    } else {
      ts_.fail("unknown label class '" + a.name + "'");
    }
    return a;
  }

  SetExpr set_expr() {
    SetExpr s;
    s.parts.push_back(set_atom());
    while (ts_.at_sym("+")) {
      ts_.next();
      s.parts.push_back(set_atom());
    }
    return s;
  }

  std::vector<ForClause> for_clauses() {
    std::vector<ForClause> out;
    for (;;) {
      ForClause f;
      f.var = ts_.expect_ident();
      if (!ts_.at_ident("in")) ts_.fail("expected 'in'");
      ts_.next();
      f.set = set_expr();
      out.push_back(std::move(f));
      if (!ts_.at_sym(",")) break;
      ts_.next();
    }
    return out;
  }

  Cond cond() {
    Cond c;
    c.lhs = lab_expr();
    if (ts_.at_sym("==") || ts_.at_sym("!=")) {
      c.op = ts_.next().text == "==" ? Cond::Op::Eq : Cond::Op::Ne;
      c.rhs = lab_expr();
    } else if (ts_.at_ident("in") || ts_.at_ident("notin")) {
      c.op = ts_.next().text == "in" ? Cond::Op::In : Cond::Op::NotIn;
      c.set = set_expr();
    } else {
      ts_.fail("expected '==', '!=', 'in' or 'notin'");
    }
    return c;
  }

  // -- transition rule templates -------------------------------------------

  void rule_block() {
    RuleTemplate r;
    r.line = ts_.peek().line;
    r.family = ts_.expect_ident();
    if (ts_.at_sym("(")) {
      ts_.next();
      if (!ts_.at_sym(")")) {
        for (;;) {
          r.params.push_back(ts_.expect_ident());
          if (!ts_.at_sym(",")) break;
          ts_.next();
        }
      }
      ts_.expect_sym(")");
    }
    end_line();
    bool concluded = false;
    for (;;) {
      if (ts_.at(Tok::End)) ts_.fail("missing 'end' of rule " + r.family);
      std::string kw = ts_.expect_ident();
      if (kw == "end") break;
      if (kw == "for") {
        auto fs = for_clauses();
        r.fors.insert(r.fors.end(), fs.begin(), fs.end());
      } else if (kw == "premise") {
        PremiseTemplate p;
        p.line = ts_.peek().line;
        p.source = ts_.expect_ident();
        ts_.expect_sym("-[");
        p.label = lab_expr();
        ts_.expect_sym("]->");
        p.target = ts_.expect_ident();
        r.premises.push_back(std::move(p));
      } else if (kw == "conclude") {
        if (concluded) ts_.fail("rule " + r.family + " has two conclusions");
        concluded = true;
        r.source = parse_ast(ts_);
        ts_.expect_sym("-[");
        r.label = lab_expr();
        ts_.expect_sym("]->");
        r.target = parse_ast(ts_);
      } else if (kw == "where") {
        for (;;) {
          r.conds.push_back(cond());
          if (!ts_.at_sym(",")) break;
          ts_.next();
        }
      } else {
        ts_.fail("unknown rule clause '" + kw + "'");
      }
      end_line();
    }
    end_line();
    if (!concluded) throw ParseError("rule " + r.family + " has no conclusion", r.line);
    spec_.rules.push_back(std::move(r));
  }

  // -- successor rules -----------------------------------------------------

  std::string id_until_eol() {
    std::string id;
    while (!ts_.at(Tok::Newline) && !ts_.at(Tok::End)) id += ts_.next().text;
    if (id.empty()) ts_.fail("expected a rule identifier");
    return id;
  }

  Term proc_term(const Ast& a) {
    switch (a.kind) {
      case Ast::Kind::Var: {
        VarRef v = parse_var_ref(a.text);
        bool process = v.cls == VarClass::X || v.cls == VarClass::XPrime ||
                       v.cls == VarClass::YPrime || v.cls == VarClass::ZPrime;
        return Term::var(process ? v.canonical() : a.text);
      }
      case Ast::Kind::Rec: {
        std::vector<std::pair<std::string, Term>> spec;
        for (const auto& [x, b] : a.bindings) spec.emplace_back(x, proc_term(b));
        return Term::rec(a.text, std::move(spec));
      }
      default: {
        std::vector<Term> kids;
        for (const auto& k : a.kids) kids.push_back(proc_term(k));
        switch (a.kind) {
          case Ast::Kind::Nil: return Term::nil();
          case Ast::Kind::Prefix: return Term::op(Operator::prefix(a.text), std::move(kids));
          case Ast::Kind::Choice: return Term::op(Operator::choice(), std::move(kids));
          case Ast::Kind::Par: return Term::op(Operator::parallel(), std::move(kids));
          case Ast::Kind::Restrict: return Term::op(Operator::restrict(a.set), std::move(kids));
          case Ast::Kind::Relabel: return Term::op(Operator::relabel(a.mapping), std::move(kids));
          case Ast::Kind::Signal: return Term::op(Operator::signal(a.text), std::move(kids));
          case Ast::Kind::Call: {
            int n = static_cast<int>(kids.size());
            return Term::op(Operator::custom(a.text, n), std::move(kids));
          }
          default: break;
        }
      }
    }
    throw ParseError("bad process expression", a.line);
  }

  TExpr texpr() {
    if (ts_.at(Tok::Ident) && ts_.at_sym("(", 1)) {
      std::string fam = ts_.next().text;
      ts_.next();
      std::vector<TExpr> args;
      if (!ts_.at_sym(")")) {
        for (;;) {
          args.push_back(texpr());
          if (!ts_.at_sym(",")) break;
          ts_.next();
        }
      }
      ts_.expect_sym(")");
      return TExpr::ctor(std::move(fam), std::move(args));
    }
    if (ts_.at(Tok::Ident)) {
      VarRef v = parse_var_ref(ts_.peek().text);
      if (v.is_transition()) {
        ts_.next();
        return TExpr::variable(v);
      }
    }
    Ast a = parse_ast(ts_);
    try {
      return TExpr::process(proc_term(a));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), a.line);
    }
  }

  void succ_literal(TExpr& lhs, TExpr& sub, TExpr& rhs) {
    lhs = texpr();
    ts_.expect_sym("~[");
    sub = texpr();
    ts_.expect_sym("]~>");
    rhs = texpr();
  }

  std::string cond_subject() {
    if (!ts_.at_ident("label")) ts_.fail("expected label(...)");
    ts_.next();
    ts_.expect_sym("(");
    std::string raw = ts_.expect_ident();
    ts_.expect_sym(")");
    return raw;
  }

  SuccCond succ_cond() {
    SuccCond c;
    c.raw = cond_subject();
    if (c.raw == "chi" || c.raw == "zeta") {
      c.subject = c.raw;
    } else {
      VarRef v = parse_var_ref(c.raw);
      c.subject = v.is_transition() ? v.canonical() : c.raw;
    }
    if (ts_.at_sym("==") || ts_.at_sym("!=")) {
      c.op = ts_.next().text == "==" ? Cond::Op::Eq : Cond::Op::Ne;
      c.value = lab_expr();
    } else if (ts_.at_ident("in") || ts_.at_ident("notin")) {
      c.op = ts_.next().text == "in" ? Cond::Op::In : Cond::Op::NotIn;
      c.set = set_expr();
    } else {
      ts_.fail("expected '==', '!=', 'in' or 'notin'");
    }
    return c;
  }

  void succ_block() {
    SuccTemplate s;
    s.line = ts_.peek().line;
    s.id = id_until_eol();
    end_line();
    bool concluded = false;
    for (;;) {
      if (ts_.at(Tok::End)) ts_.fail("missing 'end' of successor rule " + s.id);
      std::string kw = ts_.expect_ident();
      if (kw == "end") break;
      if (kw == "for") {
        auto fs = for_clauses();
        s.fors.insert(s.fors.end(), fs.begin(), fs.end());
      } else if (kw == "premise") {
        SuccPremise p;
        succ_literal(p.lhs, p.sub, p.rhs);
        s.premises.push_back(std::move(p));
      } else if (kw == "conclude") {
        if (concluded) ts_.fail("successor rule " + s.id + " has two conclusions");
        concluded = true;
        succ_literal(s.chi, s.zeta, s.result);
      } else if (kw == "where") {
        for (;;) {
          s.conds.push_back(succ_cond());
          if (!ts_.at_sym(",")) break;
          ts_.next();
        }
      } else {
        ts_.fail("unknown successor-rule clause '" + kw + "'");
      }
      end_line();
    }
    end_line();
    if (!concluded) throw ParseError("successor rule " + s.id + " has no conclusion", s.line);
    spec_.succ.push_back(std::move(s));
  }

  void meta_block() {
    MetaTemplate m;
    m.line = ts_.peek().line;
    m.id = id_until_eol();
    end_line();
    bool has_cond = false;
    for (;;) {
      if (ts_.at(Tok::End)) ts_.fail("missing 'end' of meta rule " + m.id);
      std::string kw = ts_.expect_ident();
      if (kw == "end") break;
      if (kw == "on") {
        while (ts_.at(Tok::Ident)) {
          std::string k = ts_.next().text;
          if (k == "rec") m.rec = true;
          else m.kinds.insert(kind_of(k));
        }
      } else if (kw == "where") {
        std::string subj = cond_subject();
        if (subj != "zeta") ts_.fail("meta rule conditions constrain label(zeta) only");
        if (!ts_.at_ident("in")) ts_.fail("expected 'in'");
        ts_.next();
        m.zeta_set = set_expr();
        has_cond = true;
      } else {
        ts_.fail("unknown meta-rule clause '" + kw + "'");
      }
      end_line();
    }
    end_line();
    if (!has_cond) throw ParseError("meta rule " + m.id + " needs 'where label(zeta) in ...'", m.line);
    spec_.meta.push_back(std::move(m));
  }
};

}  // namespace

LangSpec parse_lang(const std::string& text, const std::string& source_name) {
  return LangParser(text, source_name).run();
}

}  // namespace epcalc::detail
