//! Line-oriented text format for model specifications (`.fch` files) and its
//! parser and canonical serializer.
//!
//! One declaration per line. `#` starts a comment, blank lines are skipped,
//! LF and CRLF are both accepted and the serializer emits LF. Element
//! literals are indices; elements of product universes are written as
//! `(i,j)` pairs, recursively.
//!
//! ```text
//! universe A = 2
//! product P = A x A
//! bottom Ab = A
//! subset E of A = { 0, 1 }
//! listpred T over A = { [], [1], [1 0] }
//! downclose D over A = { [1 0] }
//! chaingrammar G over A = { [], [0], [1], [0 1] }
//! relation R over A x A = { (0,1) }
//! alignpred AL over A x A = align R
//! order LT on A = { (0,1) }
//! ```

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gdc::Relation;
use crate::model::{ListPredicate, RawList, Subset, Universe, UniverseKind, UniverseRef};
use crate::zorn::{ChainGrammar, OrderedModel};

/// A strict-order declaration: the relation alone, before a carrier is
/// attached. Strictness is validated when an [`OrderedModel`] is assembled,
/// not at parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDecl {
    pub universe: UniverseRef,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl OrderDecl {
    pub fn to_model(&self, carrier: Subset) -> Result<OrderedModel> {
        OrderedModel::new(&self.universe, self.pairs.iter().copied(), carrier)
    }
}

/// A named declaration, mirroring the grammar productions.
#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Universe(UniverseRef),
    Subset(Subset),
    /// `listpred`: an explicit, canonicalized list predicate.
    ExplicitPred(ListPredicate),
    /// `alignpred`: the alignment of a named relation.
    AlignPred {
        pred: ListPredicate,
        relation: String,
    },
    /// `downclose`: the downward closure of verbatim raw lists.
    DownClose(ListPredicate),
    Grammar(ChainGrammar),
    Relation(Relation),
    Order(OrderDecl),
}

/// An ordered collection of uniquely named declarations; later declarations
/// may only reference earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModelSpec {
    decls: Vec<(String, Decl)>,
}

impl ModelSpec {
    pub fn new() -> ModelSpec {
        ModelSpec::default()
    }

    pub fn declare(&mut self, name: impl Into<String>, decl: Decl) -> Result<()> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(Error::DuplicateName { name });
        }
        self.decls.push((name, decl));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Decl)> {
        self.decls.iter().map(|(n, d)| (n.as_str(), d))
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn universe(&self, name: &str) -> Option<&UniverseRef> {
        match self.get(name)? {
            Decl::Universe(u) => Some(u),
            _ => None,
        }
    }

    /// Any of the three list-predicate declaration forms.
    pub fn list_predicate(&self, name: &str) -> Option<&ListPredicate> {
        match self.get(name)? {
            Decl::ExplicitPred(t) | Decl::DownClose(t) | Decl::AlignPred { pred: t, .. } => Some(t),
            _ => None,
        }
    }

    pub fn subset(&self, name: &str) -> Option<&Subset> {
        match self.get(name)? {
            Decl::Subset(s) => Some(s),
            _ => None,
        }
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        match self.get(name)? {
            Decl::Relation(r) => Some(r),
            _ => None,
        }
    }

    pub fn grammar(&self, name: &str) -> Option<&ChainGrammar> {
        match self.get(name)? {
            Decl::Grammar(g) => Some(g),
            _ => None,
        }
    }

    pub fn order(&self, name: &str) -> Option<&OrderDecl> {
        match self.get(name)? {
            Decl::Order(o) => Some(o),
            _ => None,
        }
    }
}

/// Parse failure with a 1-based location of the first offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(usize),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Equals,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Equals => f.write_str("`=`"),
        }
    }
}

fn tokenize(line: &str, lineno: usize) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '{' => {
                toks.push((Tok::LBrace, col));
                i += 1;
            }
            '}' => {
                toks.push((Tok::RBrace, col));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, col));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, col));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Equals, col));
                i += 1;
            }
            _ if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word.chars().all(|c| c.is_ascii_digit()) {
                    match word.parse() {
                        Ok(n) => toks.push((Tok::Num(n), start + 1)),
                        Err(_) => {
                            return Err(ParseError {
                                line: lineno,
                                col: start + 1,
                                message: format!("number `{word}` is too large"),
                            })
                        }
                    }
                } else {
                    toks.push((Tok::Word(word), start + 1));
                }
            }
            _ => {
                return Err(ParseError {
                    line: lineno,
                    col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col,
            message: message.into(),
        }
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self, what: &str) -> std::result::Result<(&'a Tok, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some((t, c)) => {
                self.pos += 1;
                Ok((t, *c))
            }
            None => Err(self.err(self.end_col, format!("expected {what}, found end of line"))),
        }
    }

    fn expect(&mut self, tok: Tok) -> std::result::Result<usize, ParseError> {
        let (t, c) = self.next(&format!("{tok}"))?;
        if *t == tok {
            Ok(c)
        } else {
            Err(self.err(c, format!("expected {tok}, found {t}")))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> std::result::Result<(), ParseError> {
        let (t, c) = self.next(&format!("`{kw}`"))?;
        match t {
            Tok::Word(w) if w == kw => Ok(()),
            other => Err(self.err(c, format!("expected `{kw}`, found {other}"))),
        }
    }

    fn expect_name(&mut self, what: &str) -> std::result::Result<(String, usize), ParseError> {
        let (t, c) = self.next(what)?;
        match t {
            Tok::Word(w) => Ok((w.clone(), c)),
            other => Err(self.err(c, format!("expected {what}, found {other}"))),
        }
    }

    fn expect_num(&mut self) -> std::result::Result<(usize, usize), ParseError> {
        let (t, c) = self.next("a number")?;
        match t {
            Tok::Num(n) => Ok((*n, c)),
            other => Err(self.err(c, format!("expected a number, found {other}"))),
        }
    }

    fn expect_end(&mut self) -> std::result::Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((t, c)) => Err(self.err(*c, format!("unexpected trailing {t}"))),
        }
    }
}

/// Parses a model specification, reporting the first error with its location.
pub fn parse(text: &str) -> std::result::Result<ModelSpec, ParseError> {
    let mut spec = ModelSpec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let toks = tokenize(line, lineno)?;
        let mut cur = Cursor {
            toks: &toks,
            pos: 0,
            line: lineno,
            end_col: line.chars().count() + 1,
        };
        parse_decl(&mut cur, &mut spec)?;
    }
    Ok(spec)
}

fn parse_decl(cur: &mut Cursor, spec: &mut ModelSpec) -> std::result::Result<(), ParseError> {
    let (kw, kw_col) = cur.expect_name("a declaration keyword")?;
    let (name, name_col) = cur.expect_name("a declaration name")?;
    if spec.get(&name).is_some() {
        return Err(cur.err(name_col, format!("duplicate declaration `{name}`")));
    }
    let decl = match kw.as_str() {
        "universe" => {
            cur.expect(Tok::Equals)?;
            let (size, size_col) = cur.expect_num()?;
            let u = Universe::atomic(&name, size).map_err(|e| cur.err(size_col, e.to_string()))?;
            Decl::Universe(u)
        }
        "product" => {
            cur.expect(Tok::Equals)?;
            let left = parse_universe_ref(cur, spec)?;
            cur.expect_keyword("x")?;
            let (right, right_col) = parse_universe_ref_at(cur, spec)?;
            let u = Universe::product(&name, &left, &right)
                .map_err(|e| cur.err(right_col, e.to_string()))?;
            Decl::Universe(u)
        }
        "bottom" => {
            cur.expect(Tok::Equals)?;
            let (base, base_col) = parse_universe_ref_at(cur, spec)?;
            let u = Universe::bottom(&name, &base).map_err(|e| cur.err(base_col, e.to_string()))?;
            Decl::Universe(u)
        }
        "subset" => {
            cur.expect_keyword("of")?;
            let universe = parse_universe_ref(cur, spec)?;
            cur.expect(Tok::Equals)?;
            let members = parse_braced(cur, |cur| parse_element(cur, &universe))?;
            Decl::Subset(Subset::from_members(&universe, members).expect("elements checked"))
        }
        "listpred" => {
            cur.expect_keyword("over")?;
            let universe = parse_universe_ref(cur, spec)?;
            cur.expect(Tok::Equals)?;
            let lists = parse_braced(cur, |cur| parse_list(cur, &universe))?;
            Decl::ExplicitPred(ListPredicate::explicit(&universe, lists).expect("same universe"))
        }
        "downclose" => {
            cur.expect_keyword("over")?;
            let universe = parse_universe_ref(cur, spec)?;
            cur.expect(Tok::Equals)?;
            let lists = parse_braced(cur, |cur| parse_list(cur, &universe))?;
            Decl::DownClose(
                ListPredicate::downward_closure(&universe, lists).expect("same universe"),
            )
        }
        "chaingrammar" => {
            cur.expect_keyword("over")?;
            let universe = parse_universe_ref(cur, spec)?;
            cur.expect(Tok::Equals)?;
            let lists = parse_braced(cur, |cur| parse_list(cur, &universe))?;
            let core = lists.into_iter().map(|l| l.items().to_vec());
            Decl::Grammar(ChainGrammar::new(&universe, core).expect("elements checked"))
        }
        "alignpred" => {
            cur.expect_keyword("over")?;
            let left = parse_universe_ref(cur, spec)?;
            cur.expect_keyword("x")?;
            let right = parse_universe_ref(cur, spec)?;
            cur.expect(Tok::Equals)?;
            cur.expect_keyword("align")?;
            let (rel_name, rel_col) = cur.expect_name("a relation name")?;
            let relation = spec
                .relation(&rel_name)
                .ok_or_else(|| cur.err(rel_col, format!("unknown relation `{rel_name}`")))?;
            if relation.left().name() != left.name() || relation.right().name() != right.name() {
                return Err(cur.err(
                    rel_col,
                    format!(
                        "relation `{rel_name}` is over {} x {}, not {} x {}",
                        relation.left().name(),
                        relation.right().name(),
                        left.name(),
                        right.name()
                    ),
                ));
            }
            Decl::AlignPred {
                pred: crate::gdc::positive_alignment(relation),
                relation: rel_name,
            }
        }
        "relation" => {
            cur.expect_keyword("over")?;
            let left = parse_universe_ref(cur, spec)?;
            cur.expect_keyword("x")?;
            let right = parse_universe_ref(cur, spec)?;
            cur.expect(Tok::Equals)?;
            let pairs = parse_braced(cur, |cur| parse_pair(cur, &left, &right))?;
            Decl::Relation(Relation::new(&left, &right, pairs).expect("elements checked"))
        }
        "order" => {
            cur.expect_keyword("on")?;
            let universe = parse_universe_ref(cur, spec)?;
            cur.expect(Tok::Equals)?;
            let pairs = parse_braced(cur, |cur| parse_pair(cur, &universe, &universe))?;
            Decl::Order(OrderDecl {
                universe,
                pairs: pairs.into_iter().collect(),
            })
        }
        other => {
            return Err(cur.err(kw_col, format!("unknown declaration keyword `{other}`")));
        }
    };
    cur.expect_end()?;
    spec.declare(name, decl).expect("duplicate checked above");
    Ok(())
}

fn parse_universe_ref(
    cur: &mut Cursor,
    spec: &ModelSpec,
) -> std::result::Result<UniverseRef, ParseError> {
    Ok(parse_universe_ref_at(cur, spec)?.0)
}

fn parse_universe_ref_at(
    cur: &mut Cursor,
    spec: &ModelSpec,
) -> std::result::Result<(UniverseRef, usize), ParseError> {
    let (name, col) = cur.expect_name("a universe name")?;
    match spec.get(&name) {
        Some(Decl::Universe(u)) => Ok((u.clone(), col)),
        Some(_) => Err(cur.err(col, format!("`{name}` is not a universe"))),
        None => Err(cur.err(col, format!("unknown universe `{name}`"))),
    }
}

/// `{ item, item, ... }` with an empty `{ }` allowed.
fn parse_braced<T>(
    cur: &mut Cursor,
    mut item: impl FnMut(&mut Cursor) -> std::result::Result<T, ParseError>,
) -> std::result::Result<Vec<T>, ParseError> {
    cur.expect(Tok::LBrace)?;
    let mut out = Vec::new();
    if cur.peek() == Some(&Tok::RBrace) {
        cur.next("`}`")?;
        return Ok(out);
    }
    loop {
        out.push(item(cur)?);
        let (t, c) = cur.next("`,` or `}`")?;
        match t {
            Tok::Comma => continue,
            Tok::RBrace => break,
            other => return Err(cur.err(c, format!("expected `,` or `}}`, found {other}"))),
        }
    }
    Ok(out)
}

fn parse_element(
    cur: &mut Cursor,
    universe: &UniverseRef,
) -> std::result::Result<usize, ParseError> {
    if let Some((left, right)) = universe.as_product() {
        let (left, right) = (left.clone(), right.clone());
        cur.expect(Tok::LParen)?;
        let a = parse_element(cur, &left)?;
        cur.expect(Tok::Comma)?;
        let b = parse_element(cur, &right)?;
        cur.expect(Tok::RParen)?;
        Ok(a * right.size() + b)
    } else {
        let (n, col) = cur.expect_num()?;
        universe
            .check_index(n)
            .map_err(|e| cur.err(col, e.to_string()))?;
        Ok(n)
    }
}

/// `[el el ...]`, elements separated by whitespace.
fn parse_list(
    cur: &mut Cursor,
    universe: &UniverseRef,
) -> std::result::Result<RawList, ParseError> {
    cur.expect(Tok::LBracket)?;
    let mut items = Vec::new();
    while cur.peek() != Some(&Tok::RBracket) {
        if cur.peek().is_none() {
            return Err(cur.err(cur.here(), "expected `]`, found end of line".to_string()));
        }
        items.push(parse_element(cur, universe)?);
    }
    cur.next("`]`")?;
    Ok(RawList::new(universe, items).expect("elements checked"))
}

fn parse_pair(
    cur: &mut Cursor,
    left: &UniverseRef,
    right: &UniverseRef,
) -> std::result::Result<(usize, usize), ParseError> {
    cur.expect(Tok::LParen)?;
    let a = parse_element(cur, left)?;
    cur.expect(Tok::Comma)?;
    let b = parse_element(cur, right)?;
    cur.expect(Tok::RParen)?;
    Ok((a, b))
}

/// Canonical rendering of one element: plain index, or a `(i,j)` pair over a
/// product universe, recursively.
pub fn render_element(universe: &Universe, index: usize) -> String {
    match universe.as_product() {
        Some((left, right)) => {
            let (a, b) = (index / right.size(), index % right.size());
            format!("({},{})", render_element(left, a), render_element(right, b))
        }
        None => index.to_string(),
    }
}

fn render_set(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    if items.is_empty() {
        "{ }".to_string()
    } else {
        format!("{{ {} }}", items.join(", "))
    }
}

fn render_list(universe: &Universe, items: &[usize]) -> String {
    let rendered: Vec<String> = items.iter().map(|&i| render_element(universe, i)).collect();
    format!("[{}]", rendered.join(" "))
}

pub fn render_universe_decl(name: &str, universe: &Universe) -> String {
    match universe.kind() {
        UniverseKind::Atomic => format!("universe {name} = {}", universe.size()),
        UniverseKind::Product(l, r) => format!("product {name} = {} x {}", l.name(), r.name()),
        UniverseKind::BottomExtended(b) => format!("bottom {name} = {}", b.name()),
    }
}

pub fn render_subset_decl(name: &str, subset: &Subset) -> String {
    let u = subset.universe();
    format!(
        "subset {name} of {} = {}",
        u.name(),
        render_set(subset.members().into_iter().map(|i| render_element(u, i)))
    )
}

/// Explicit list-predicate declaration from canonical member masks, lists
/// sorted lexicographically.
pub fn render_listpred_decl(name: &str, t: &ListPredicate, cap: usize) -> Result<String> {
    let u = t.universe();
    let mut lists: Vec<Vec<usize>> = t
        .member_masks(cap)?
        .into_iter()
        .map(|m| (0..u.size()).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    lists.sort();
    Ok(format!(
        "listpred {name} over {} = {}",
        u.name(),
        render_set(lists.iter().map(|l| render_list(u, l)))
    ))
}

pub fn render_downclose_decl(name: &str, t: &ListPredicate) -> Option<String> {
    let u = t.universe();
    let lists = t.downward_lists()?;
    Some(format!(
        "downclose {name} over {} = {}",
        u.name(),
        render_set(lists.iter().map(|l| render_list(u, l)))
    ))
}

pub fn render_grammar_decl(name: &str, grammar: &ChainGrammar) -> String {
    let u = grammar.universe();
    format!(
        "chaingrammar {name} over {} = {}",
        u.name(),
        render_set(grammar.core().iter().map(|l| render_list(u, l)))
    )
}

pub fn render_relation_decl(name: &str, relation: &Relation) -> String {
    let (l, r) = (relation.left(), relation.right());
    format!(
        "relation {name} over {} x {} = {}",
        l.name(),
        r.name(),
        render_set(relation.pairs().iter().map(|&(a, b)| format!(
            "({},{})",
            render_element(l, a),
            render_element(r, b)
        )))
    )
}

pub fn render_order_decl(name: &str, order: &OrderDecl) -> String {
    let u = &order.universe;
    format!(
        "order {name} on {} = {}",
        u.name(),
        render_set(order.pairs.iter().map(|&(a, b)| format!(
            "({},{})",
            render_element(u, a),
            render_element(u, b)
        )))
    )
}

fn render_decl(name: &str, decl: &Decl) -> String {
    match decl {
        Decl::Universe(u) => render_universe_decl(name, u),
        Decl::Subset(s) => render_subset_decl(name, s),
        Decl::ExplicitPred(t) => {
            let u = t.universe();
            let masks = t
                .explicit_set()
                .expect("listpred declarations are explicit");
            let mut lists: Vec<Vec<usize>> = masks
                .iter()
                .map(|&m| (0..u.size()).filter(|&i| m >> i & 1 == 1).collect())
                .collect();
            lists.sort();
            format!(
                "listpred {name} over {} = {}",
                u.name(),
                render_set(lists.iter().map(|l| render_list(u, l)))
            )
        }
        Decl::AlignPred { pred, relation } => {
            let (l, r) = pred
                .universe()
                .as_product()
                .expect("alignment over a product");
            format!(
                "alignpred {name} over {} x {} = align {relation}",
                l.name(),
                r.name()
            )
        }
        Decl::DownClose(t) => {
            render_downclose_decl(name, t).expect("downclose declarations store their lists")
        }
        Decl::Grammar(g) => render_grammar_decl(name, g),
        Decl::Relation(r) => render_relation_decl(name, r),
        Decl::Order(o) => render_order_decl(name, o),
    }
}

/// Canonical rendering: one declaration per line in declaration order, sorted
/// element lists, LF line ends. Parsing the result reproduces the spec.
pub fn serialize(spec: &ModelSpec) -> String {
    let mut out = String::new();
    for (name, decl) in spec.iter() {
        out.push_str(&render_decl(name, decl));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_ok(text: &str) -> ModelSpec {
        parse(text).expect("spec should parse")
    }

    #[test]
    fn parses_universes_and_predicates() {
        let spec = parse_ok("universe A = 2\nlistpred T over A = { [], [1], [1 0] }\n");
        let a = spec.universe("A").unwrap();
        assert_eq!(a.size(), 2);
        let t = spec.list_predicate("T").unwrap();
        assert!(t.member(&RawList::new(a, vec![1, 1]).unwrap()).unwrap());
        assert!(!t.member(&RawList::new(a, vec![0]).unwrap()).unwrap());
    }

    #[test]
    fn parses_orders_and_subsets() {
        let spec =
            parse_ok("universe A = 2\norder LT on A = { (0,1) }\nsubset E of A = { 0, 1 }\n");
        let o = spec.order("LT").unwrap();
        assert!(o.pairs.contains(&(0, 1)));
        let e = spec.subset("E").unwrap();
        assert_eq!(e.members(), vec![0, 1]);
        let model = o.to_model(e.clone()).unwrap();
        assert_eq!(model.carrier().len(), 2);
    }

    #[test]
    fn range_error_points_at_the_literal() {
        let err = parse("universe A = 2\nlistpred T over A = { [3] }\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.col, 24);
        assert!(err.message.contains("out of range"), "{}", err.message);
    }

    #[test]
    fn unknown_reference_and_duplicate_name_errors() {
        let err = parse("listpred T over A = { [] }\n").unwrap_err();
        assert_eq!((err.line, err.col), (1, 17));
        assert!(err.message.contains("unknown universe"));

        let err = parse("universe A = 2\nuniverse A = 3\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 10));
        assert!(err.message.contains("duplicate"));
    }

    #[test]
    fn syntax_errors_carry_locations() {
        let err = parse("universe A 2\n").unwrap_err();
        assert_eq!((err.line, err.col), (1, 12));

        let err = parse("universe A = 2\nsubset S of A = { 0, }\n").unwrap_err();
        assert_eq!(err.line, 2);

        let err = parse("frobnicate X = 1\n").unwrap_err();
        assert!(err.message.contains("unknown declaration keyword"));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let spec = parse_ok("# header\n\nuniverse A = 2 # trailing\r\n\n# done\n");
        assert_eq!(spec.universe("A").unwrap().size(), 2);
    }

    #[test]
    fn product_elements_parse_and_render() {
        let spec = parse_ok(
            "universe A = 2\nuniverse B = 3\nproduct P = A x B\nsubset S of P = { (1,2), (0,0) }\n",
        );
        let s = spec.subset("S").unwrap();
        assert_eq!(s.members(), vec![0, 5]);
        let round = parse_ok(&serialize(&spec));
        assert_eq!(round, spec);
    }

    #[test]
    fn alignment_declarations_resolve_their_relation() {
        let text = "universe A = 2\nuniverse B = 2\nrelation R over A x B = { (0,1), (1,0) }\nalignpred T over A x B = align R\n";
        let spec = parse_ok(text);
        let t = spec.list_predicate("T").unwrap();
        assert!(t.contains_empty());
        assert_eq!(serialize(&spec), text);

        let err = parse("universe A = 2\nalignpred T over A x A = align R\n").unwrap_err();
        assert!(err.message.contains("unknown relation"));
    }

    #[test]
    fn serialization_is_canonical_and_round_trips() {
        let text = "universe A = 3\nlistpred T over A = { [2 0 2], [1] }\ndownclose D over A = { [2 1] }\nchaingrammar G over A = { [], [0] }\norder LT on A = { (0,1) }\n";
        let spec = parse_ok(text);
        let canonical = serialize(&spec);
        // Explicit lists come out canonicalized and sorted.
        assert!(canonical.contains("listpred T over A = { [0 2], [1] }"));
        // Downclose lists stay verbatim.
        assert!(canonical.contains("downclose D over A = { [2 1] }"));
        let reparsed = parse_ok(&canonical);
        assert_eq!(reparsed, spec);
        assert_eq!(serialize(&reparsed), canonical);
    }

    #[test]
    fn empty_spec_serializes_to_nothing() {
        let spec = parse_ok("");
        assert!(spec.is_empty());
        assert_eq!(serialize(&spec), "");
    }

    #[test]
    fn bottom_universes_round_trip() {
        let text = "universe B = 2\nbottom Bb = B\nsubset S of Bb = { 2 }\n";
        let spec = parse_ok(text);
        assert_eq!(spec.universe("Bb").unwrap().bottom_index(), Some(2));
        assert_eq!(serialize(&spec), text);
    }

    #[test]
    fn orders_over_products_use_nested_pair_literals() {
        let text = "universe A = 2\nproduct P = A x A\norder LT on P = { ((0,0),(1,1)) }\nlistpred T over P = { [(0,1) (1,0)] }\n";
        let spec = parse_ok(text);
        let o = spec.order("LT").unwrap();
        assert!(o.pairs.contains(&(0, 3)));
        let t = spec.list_predicate("T").unwrap();
        assert!(t.member_mask(0b0110));
        assert_eq!(serialize(&spec), text);
    }
}
