//! A line-oriented description language for finite sets, graphs,
//! categories, profunctors, signatures, multicategories and
//! multiprofunctors, with a canonical printer.
//!
//! ```text
//! set A = {x, y}
//! graph G on A : x -> y as f
//! cat C = free(G)
//! prof P : C -> C = hom(C)
//! sig S on A { m : (x, x) -> x }
//! mcat M = free(S) / { m(x0, x1) = m(x1, x0) }
//! mprof Q : M -> M = free { g : (x) -> x }
//! ```
//!
//! Statements end at a newline outside braces; inside braces newlines and
//! `;` separate items. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;

use crate::catmon::{free_category, saturate, FinCategory, Graph, Path, Presentation as CatPresentation, Saturation};
use crate::error::{Error, Result};
use crate::finkit::FinSet;
use crate::opdkit::{materialise, Bounds, Generator, MultiProfunctor, Presentation, Profile, Relation, Signature, SymMulticat, SymSeq, Term};
use crate::perm::Perm;
use crate::promod::Profunctor;
use crate::vmatrix::Mat;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 13] = ["->", "<-", "=", "{", "}", "(", ")", ",", ":", ";", ".", "/", "*"];

fn syntax<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { line, col, msg: msg.into() })
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, col });
            } else {
                let rest: String = chars[i..].iter().take(2).collect();
                match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                    Some(s) => {
                        out.push(Token { tok: Tok::Sym(s), line, col });
                        i += s.len();
                    }
                    None => return syntax(line, col, format!("unexpected character '{c}'")),
                }
            }
        }
        out.push(Token { tok: Tok::Newline, line, col: chars.len() + 1 });
    }
    Ok(out)
}

/// A path in a category description: `id(x)` or `g.f` (apply `f` first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathExpr {
    Id(String),
    Word(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatDef {
    Discrete(String),
    Free { graph: String, relations: Vec<(PathExpr, PathExpr)> },
    /// objects, non-identity arrows `(name, src, tgt)`, composites `g.f = h`
    Table { objects: Vec<String>, arrows: Vec<(String, String, String)>, compose: Vec<(String, String, PathExpr)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfDef {
    Hom(String),
    /// elements `(name, y, x)` in `P[y; x]`, left actions `g.p = q`, right actions `p.f = q`
    Table { elements: Vec<(String, String, String)>, left: Vec<(String, String, String)>, right: Vec<(String, String, String)> },
}

/// A tree over a signature: `x3` is input 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermExpr {
    Var(usize),
    Op(String, Vec<TermExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum McatDef {
    Discrete(String),
    Cyclic(usize),
    Free { sig: String, relations: Vec<(TermExpr, TermExpr)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub inputs: Vec<String>,
    pub output: String,
    /// trivial symmetric action instead of a free orbit
    pub fixed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MprofDef {
    Identity(String),
    Free(Vec<GenDecl>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    Budget(usize),
    Trunc(usize),
    Size(usize),
    Set(Vec<String>),
    Graph { set: String, edges: Vec<(String, String, String)> },
    Cat(CatDef),
    Prof { src: String, tgt: String, def: ProfDef },
    /// entries row by row, one row per target element
    Mat { src: String, tgt: String, rows: Vec<Vec<usize>> },
    /// colours default to the names used, in order of appearance
    Sig { set: Option<String>, ops: Vec<(String, Vec<String>, String)> },
    Mcat(McatDef),
    Mprof { src: String, tgt: String, def: MprofDef },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    /// empty for settings
    pub name: String,
    pub kind: DeclKind,
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpecDocument {
    pub decls: Vec<Decl>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.peek();
        syntax(t.line, t.col, msg)
    }

    /// Skips newlines only inside braces.
    fn skip_inner_newlines(&mut self, depth: usize) {
        while depth > 0 && !self.at_end() && self.peek().tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        !self.at_end() && self.peek().tok == Tok::Sym(SYMBOLS.iter().find(|x| **x == s).copied().unwrap_or(""))
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.is_sym(s) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        if self.at_end() {
            return self.err("unexpected end of input");
        }
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        let t = self.peek().clone();
        match self.ident() {
            Ok(s) if s == k => Ok(()),
            _ => syntax(t.line, t.col, format!("expected '{k}'")),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let t = self.peek().clone();
        let s = self.ident()?;
        s.parse().or_else(|_| syntax(t.line, t.col, format!("expected a number, found '{s}'")))
    }

    fn end_of_statement(&mut self) -> Result<()> {
        if self.at_end() {
            return Ok(());
        }
        match self.peek().tok {
            Tok::Newline => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected end of line"),
        }
    }

    /// `{ item ; item \n item }` with a callback per item.
    fn block(&mut self, mut item: impl FnMut(&mut Parser) -> Result<()>) -> Result<()> {
        self.expect("{")?;
        loop {
            self.skip_inner_newlines(1);
            while self.is_sym(";") {
                self.pos += 1;
                self.skip_inner_newlines(1);
            }
            if self.is_sym("}") {
                self.pos += 1;
                return Ok(());
            }
            if self.at_end() {
                return self.err("unclosed '{'");
            }
            item(self)?;
            if !(self.is_sym(";") || self.is_sym("}") || (!self.at_end() && self.peek().tok == Tok::Newline)) {
                return self.err("expected ';', a newline or '}'");
            }
        }
    }

    fn name_list(&mut self, close: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if self.is_sym(close) {
            return Ok(out);
        }
        out.push(self.ident()?);
        while self.is_sym(",") {
            self.pos += 1;
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn path(&mut self) -> Result<PathExpr> {
        let first = self.ident()?;
        if first == "id" && self.is_sym("(") {
            self.pos += 1;
            let x = self.ident()?;
            self.expect(")")?;
            return Ok(PathExpr::Id(x));
        }
        let mut word = vec![first];
        while self.is_sym(".") {
            self.pos += 1;
            word.push(self.ident()?);
        }
        Ok(PathExpr::Word(word))
    }

    fn term(&mut self) -> Result<TermExpr> {
        let t = self.peek().clone();
        let name = self.ident()?;
        if self.is_sym("(") {
            self.pos += 1;
            let mut args = Vec::new();
            if !self.is_sym(")") {
                args.push(self.term()?);
                while self.is_sym(",") {
                    self.pos += 1;
                    args.push(self.term()?);
                }
            }
            self.expect(")")?;
            return Ok(TermExpr::Op(name, args));
        }
        match var_index(&name) {
            Some(v) => Ok(TermExpr::Var(v)),
            None => syntax(t.line, t.col, format!("'{name}' is neither a variable x<n> nor an application")),
        }
    }

    fn profile(&mut self) -> Result<(Vec<String>, String)> {
        self.expect("(")?;
        let inputs = self.name_list(")")?;
        self.expect(")")?;
        self.expect("->")?;
        Ok((inputs, self.ident()?))
    }

    fn statement(&mut self) -> Result<Option<Decl>> {
        while !self.at_end() && self.peek().tok == Tok::Newline {
            self.pos += 1;
        }
        if self.at_end() {
            return Ok(None);
        }
        let line = self.peek().line;
        let word = self.ident()?;
        let (name, kind) = match word.as_str() {
            "budget" => (String::new(), DeclKind::Budget(self.number()?)),
            "trunc" => (String::new(), DeclKind::Trunc(self.number()?)),
            "size" => (String::new(), DeclKind::Size(self.number()?)),
            "set" => {
                let name = self.ident()?;
                self.expect("=")?;
                self.expect("{")?;
                let elems = self.name_list("}")?;
                self.expect("}")?;
                (name, DeclKind::Set(elems))
            }
            "graph" => {
                let name = self.ident()?;
                self.keyword("on")?;
                let set = self.ident()?;
                self.expect(":")?;
                let mut edges = Vec::new();
                if !self.at_end() && self.peek().tok != Tok::Newline {
                    loop {
                        let s = self.ident()?;
                        self.expect("->")?;
                        let t = self.ident()?;
                        self.keyword("as")?;
                        edges.push((self.ident()?, s, t));
                        if !self.is_sym(",") {
                            break;
                        }
                        self.pos += 1;
                    }
                }
                (name, DeclKind::Graph { set, edges })
            }
            "cat" => {
                let name = self.ident()?;
                self.expect("=")?;
                (name, DeclKind::Cat(self.catdef()?))
            }
            "prof" => {
                let name = self.ident()?;
                self.expect(":")?;
                let src = self.ident()?;
                self.expect("->")?;
                let tgt = self.ident()?;
                if self.is_sym("{") {
                    let def = self.prof_table()?;
                    self.end_of_statement()?;
                    return Ok(Some(Decl { name, kind: DeclKind::Prof { src, tgt, def }, line }));
                }
                self.expect("=")?;
                (name, DeclKind::Prof { src, tgt, def: self.profdef()? })
            }
            "sig" => {
                let name = self.ident()?;
                let set = if matches!(&self.peek().tok, Tok::Ident(s) if s == "on") {
                    self.pos += 1;
                    Some(self.ident()?)
                } else {
                    None
                };
                let mut ops = Vec::new();
                self.block(|p| {
                    let g = p.ident()?;
                    p.expect(":")?;
                    let (inputs, output) = p.profile()?;
                    ops.push((g, inputs, output));
                    Ok(())
                })?;
                (name, DeclKind::Sig { set, ops })
            }
            "mat" => {
                let name = self.ident()?;
                self.expect(":")?;
                let src = self.ident()?;
                self.expect("->")?;
                let tgt = self.ident()?;
                self.expect("=")?;
                let mut rows = Vec::new();
                self.block(|p| {
                    let mut row = vec![p.number()?];
                    while p.is_sym(",") {
                        p.pos += 1;
                        row.push(p.number()?);
                    }
                    rows.push(row);
                    Ok(())
                })?;
                (name, DeclKind::Mat { src, tgt, rows })
            }
            "mcat" => {
                let name = self.ident()?;
                self.expect("=")?;
                (name, DeclKind::Mcat(self.mcatdef()?))
            }
            "mprof" => {
                let name = self.ident()?;
                self.expect(":")?;
                let src = self.ident()?;
                self.expect("->")?;
                let tgt = self.ident()?;
                self.expect("=")?;
                (name, DeclKind::Mprof { src, tgt, def: self.mprofdef()? })
            }
            other => {
                let t = &self.toks[self.pos - 1];
                return syntax(t.line, t.col, format!("unknown declaration '{other}'"));
            }
        };
        self.end_of_statement()?;
        Ok(Some(Decl { name, kind, line }))
    }

    fn catdef(&mut self) -> Result<CatDef> {
        let t = self.peek().clone();
        match self.ident()?.as_str() {
            "discrete" => {
                self.expect("(")?;
                let s = self.ident()?;
                self.expect(")")?;
                Ok(CatDef::Discrete(s))
            }
            "free" => {
                self.expect("(")?;
                let graph = self.ident()?;
                self.expect(")")?;
                let mut relations = Vec::new();
                if self.is_sym("/") {
                    self.pos += 1;
                    self.block(|p| {
                        let l = p.path()?;
                        p.expect("=")?;
                        relations.push((l, p.path()?));
                        Ok(())
                    })?;
                }
                Ok(CatDef::Free { graph, relations })
            }
            "table" => {
                let (mut objects, mut arrows, mut compose) = (Vec::new(), Vec::new(), Vec::new());
                self.block(|p| {
                    let t = p.peek().clone();
                    match p.ident()?.as_str() {
                        "objects" => {
                            objects.extend(p.name_list(";")?);
                        }
                        "arrow" => {
                            let f = p.ident()?;
                            p.expect(":")?;
                            let s = p.ident()?;
                            p.expect("->")?;
                            arrows.push((f, s, p.ident()?));
                        }
                        g => {
                            let g = g.to_string();
                            if !p.is_sym(".") {
                                return syntax(t.line, t.col, format!("unknown table item '{g}'"));
                            }
                            p.pos += 1;
                            let f = p.ident()?;
                            p.expect("=")?;
                            compose.push((g, f, p.path()?));
                        }
                    }
                    Ok(())
                })?;
                Ok(CatDef::Table { objects, arrows, compose })
            }
            other => syntax(t.line, t.col, format!("unknown category form '{other}'")),
        }
    }

    fn profdef(&mut self) -> Result<ProfDef> {
        let t = self.peek().clone();
        match self.ident()?.as_str() {
            "hom" => {
                self.expect("(")?;
                let c = self.ident()?;
                self.expect(")")?;
                Ok(ProfDef::Hom(c))
            }
            "table" => self.prof_table(),
            other => syntax(t.line, t.col, format!("unknown profunctor form '{other}'")),
        }
    }

    fn prof_table(&mut self) -> Result<ProfDef> {
        {
            {
                let (mut elements, mut left, mut right) = (Vec::new(), Vec::new(), Vec::new());
                self.block(|p| {
                    let t = p.peek().clone();
                    match p.ident()?.as_str() {
                        "elem" => {
                            let e = p.ident()?;
                            p.expect(":")?;
                            let y = p.ident()?;
                            p.expect("<-")?;
                            elements.push((e, y, p.ident()?));
                        }
                        side @ ("left" | "right") => {
                            let side = side.to_string();
                            let a = p.ident()?;
                            p.expect(".")?;
                            let b = p.ident()?;
                            p.expect("=")?;
                            let c = p.ident()?;
                            if side == "left" {
                                left.push((a, b, c));
                            } else {
                                right.push((a, b, c));
                            }
                        }
                        other => return syntax(t.line, t.col, format!("unknown profunctor item '{other}'")),
                    }
                    Ok(())
                })?;
                Ok(ProfDef::Table { elements, left, right })
            }
        }
    }

    fn mcatdef(&mut self) -> Result<McatDef> {
        let t = self.peek().clone();
        match self.ident()?.as_str() {
            "discrete" => {
                self.expect("(")?;
                let s = self.ident()?;
                self.expect(")")?;
                Ok(McatDef::Discrete(s))
            }
            "cyclic" => {
                self.expect("(")?;
                let n = self.number()?;
                self.expect(")")?;
                Ok(McatDef::Cyclic(n))
            }
            "free" => {
                self.expect("(")?;
                let sig = self.ident()?;
                self.expect(")")?;
                let mut relations = Vec::new();
                if self.is_sym("/") {
                    self.pos += 1;
                    self.block(|p| {
                        let l = p.term()?;
                        p.expect("=")?;
                        relations.push((l, p.term()?));
                        Ok(())
                    })?;
                }
                Ok(McatDef::Free { sig, relations })
            }
            other => syntax(t.line, t.col, format!("unknown multicategory form '{other}'")),
        }
    }

    fn mprofdef(&mut self) -> Result<MprofDef> {
        let t = self.peek().clone();
        match self.ident()?.as_str() {
            "identity" => {
                self.expect("(")?;
                let m = self.ident()?;
                self.expect(")")?;
                Ok(MprofDef::Identity(m))
            }
            "free" => {
                let mut gens = Vec::new();
                self.block(|p| {
                    let name = p.ident()?;
                    p.expect(":")?;
                    let (inputs, output) = p.profile()?;
                    let fixed = matches!(&p.peek().tok, Tok::Ident(s) if s == "fixed");
                    if fixed {
                        p.pos += 1;
                    }
                    gens.push(GenDecl { name, inputs, output, fixed });
                    Ok(())
                })?;
                Ok(MprofDef::Free(gens))
            }
            other => syntax(t.line, t.col, format!("unknown multiprofunctor form '{other}'")),
        }
    }
}

fn var_index(name: &str) -> Option<usize> {
    name.strip_prefix('x').filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit())).and_then(|d| d.parse().ok())
}

pub fn parse_spec(text: &str) -> Result<SpecDocument> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut decls: Vec<Decl> = Vec::new();
    while let Some(d) = p.statement()? {
        if !d.name.is_empty() && decls.iter().any(|e| e.name == d.name) {
            return syntax(d.line, 1, format!("'{}' is declared twice", d.name));
        }
        decls.push(d);
    }
    Ok(SpecDocument { decls })
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathExpr::Id(x) => write!(f, "id({x})"),
            PathExpr::Word(w) => write!(f, "{}", w.join(".")),
        }
    }
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermExpr::Var(v) => write!(f, "x{v}"),
            TermExpr::Op(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.name;
        match &self.kind {
            DeclKind::Budget(b) => write!(f, "budget {b}"),
            DeclKind::Trunc(b) => write!(f, "trunc {b}"),
            DeclKind::Size(b) => write!(f, "size {b}"),
            DeclKind::Set(elems) => write!(f, "set {n} = {{{}}}", elems.join(", ")),
            DeclKind::Graph { set, edges } => {
                let es: Vec<String> = edges.iter().map(|(e, s, t)| format!("{s} -> {t} as {e}")).collect();
                write!(f, "graph {n} on {set} : {}", es.join(", "))
            }
            DeclKind::Cat(CatDef::Discrete(s)) => write!(f, "cat {n} = discrete({s})"),
            DeclKind::Cat(CatDef::Free { graph, relations }) => {
                write!(f, "cat {n} = free({graph})")?;
                if !relations.is_empty() {
                    let rs: Vec<String> = relations.iter().map(|(a, b)| format!("{a} = {b}")).collect();
                    write!(f, " / {{ {} }}", rs.join("; "))?;
                }
                Ok(())
            }
            DeclKind::Cat(CatDef::Table { objects, arrows, compose }) => {
                let mut items = vec![format!("objects {}", objects.join(", "))];
                items.extend(arrows.iter().map(|(a, s, t)| format!("arrow {a} : {s} -> {t}")));
                items.extend(compose.iter().map(|(g, h, r)| format!("{g}.{h} = {r}")));
                write!(f, "cat {n} = table {{ {} }}", items.join("; "))
            }
            DeclKind::Prof { src, tgt, def } => match def {
                ProfDef::Hom(c) => write!(f, "prof {n} : {src} -> {tgt} = hom({c})"),
                ProfDef::Table { elements, left, right } => {
                    let mut items: Vec<String> = elements.iter().map(|(e, y, x)| format!("elem {e} : {y} <- {x}")).collect();
                    items.extend(left.iter().map(|(g, p, q)| format!("left {g}.{p} = {q}")));
                    items.extend(right.iter().map(|(p, h, q)| format!("right {p}.{h} = {q}")));
                    write!(f, "prof {n} : {src} -> {tgt} {{ {} }}", items.join("; "))
                }
            },
            DeclKind::Mat { src, tgt, rows } => {
                let rs: Vec<String> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")).collect();
                write!(f, "mat {n} : {src} -> {tgt} = {{ {} }}", rs.join("; "))
            }
            DeclKind::Sig { set, ops } => {
                let items: Vec<String> = ops.iter().map(|(g, i, o)| format!("{g} : ({}) -> {o}", i.join(", "))).collect();
                match set {
                    Some(set) => write!(f, "sig {n} on {set} {{ {} }}", items.join("; ")),
                    None => write!(f, "sig {n} {{ {} }}", items.join("; ")),
                }
            }
            DeclKind::Mcat(McatDef::Discrete(s)) => write!(f, "mcat {n} = discrete({s})"),
            DeclKind::Mcat(McatDef::Cyclic(k)) => write!(f, "mcat {n} = cyclic({k})"),
            DeclKind::Mcat(McatDef::Free { sig, relations }) => {
                write!(f, "mcat {n} = free({sig})")?;
                if !relations.is_empty() {
                    let rs: Vec<String> = relations.iter().map(|(a, b)| format!("{a} = {b}")).collect();
                    write!(f, " / {{ {} }}", rs.join("; "))?;
                }
                Ok(())
            }
            DeclKind::Mprof { src, tgt, def } => {
                write!(f, "mprof {n} : {src} -> {tgt} = ")?;
                match def {
                    MprofDef::Identity(m) => write!(f, "identity({m})"),
                    MprofDef::Free(gens) => {
                        let items: Vec<String> = gens
                            .iter()
                            .map(|g| format!("{} : ({}) -> {}{}", g.name, g.inputs.join(", "), g.output, if g.fixed { " fixed" } else { "" }))
                            .collect();
                        write!(f, "free {{ {} }}", items.join("; "))
                    }
                }
            }
        }
    }
}

/// One declaration per line, in order.
pub fn serialise(doc: &SpecDocument) -> String {
    doc.decls.iter().map(|d| format!("{d}\n")).collect()
}

/// Elaborated values, by name. Defaults: budget 6, truncation 2, table size truncation + 3.
#[derive(Debug, Clone)]
pub struct Env {
    pub budget: usize,
    pub trunc: usize,
    pub size: usize,
    pub sets: BTreeMap<String, FinSet>,
    pub graphs: BTreeMap<String, Graph>,
    pub cats: BTreeMap<String, FinCategory>,
    pub profs: BTreeMap<String, Profunctor>,
    pub mats: BTreeMap<String, Mat>,
    pub sigs: BTreeMap<String, Signature>,
    /// colour names of signatures and multicategories
    pub colours: BTreeMap<String, FinSet>,
    pub mcats: BTreeMap<String, SymMulticat>,
    /// presentations of presented multicategories, for algebra counts
    pub presentations: BTreeMap<String, Presentation>,
    pub mprofs: BTreeMap<String, MultiProfunctor>,
    /// declaration names in order with their kind keyword
    pub order: Vec<(String, &'static str)>,
    size_given: bool,
}

fn at<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    syntax(line, 1, msg)
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, what: &str, line: usize) -> Result<&'a T> {
    match map.get(name) {
        Some(v) => Ok(v),
        None => at(line, format!("unknown {what} '{name}'")),
    }
}

fn index_in(set: &FinSet, name: &str, line: usize) -> Result<usize> {
    match set.index_of(name) {
        Some(i) => Ok(i),
        None => at(line, format!("'{name}' is not an element")),
    }
}

/// The multicategory of a cyclic group acting by unary operations.
pub fn cyclic_multicat(n: usize, trunc: usize) -> Result<SymMulticat> {
    let ops = SymSeq::free_single(&[0, n], trunc)?;
    let names = (0..n).map(|k| if k == 0 { "id".to_string() } else { format!("s{k}") }).collect();
    SymMulticat::new(ops, vec![0], names, true, |f, _, g| Some((f + g) % n))
}

/// Generators with free or trivial symmetric action.
pub fn generator_sequence(out_colours: usize, in_colours: usize, gens: &[(Profile, bool)], trunc: usize) -> Result<SymSeq> {
    let mut base: Vec<(usize, Perm)> = Vec::new();
    let mut profiles = Vec::new();
    for (g, (p, fixed)) in gens.iter().enumerate() {
        if *fixed {
            if p.inputs.iter().any(|&c| c != p.inputs[0]) {
                return Err(Error::Shape("a fixed generator needs all inputs of one colour".into()));
            }
            base.push((g, Perm::identity(p.arity())));
            profiles.push(p.clone());
        } else {
            for s in Perm::all(p.arity()) {
                profiles.push(p.act(&s));
                base.push((g, s));
            }
        }
    }
    let index: BTreeMap<(usize, Perm), usize> = base.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let fixed: Vec<bool> = gens.iter().map(|g| g.1).collect();
    let exact = vec![true; trunc + 1];
    SymSeq::new(out_colours, in_colours, profiles, trunc, exact, true, |e, s| {
        let (g, p) = &base[e];
        if fixed[*g] {
            e
        } else {
            index[&(*g, p.compose(s))]
        }
    })
}

fn term_of(t: &TermExpr, sig: &Signature, line: usize) -> Result<Term> {
    match t {
        TermExpr::Var(v) => Ok(Term::Var(*v)),
        TermExpr::Op(g, args) => {
            let Some(i) = sig.generators.iter().position(|x| &x.name == g) else {
                return at(line, format!("unknown operation '{g}'"));
            };
            let args = args.iter().map(|a| term_of(a, sig, line)).collect::<Result<Vec<_>>>()?;
            Ok(Term::Op(i, args))
        }
    }
}

/// Input colours of a tree's variables, read off the operations above them.
fn leaf_colours(t: &Term, sig: &Signature, out: &mut BTreeMap<usize, usize>, want: Option<usize>) -> bool {
    match t {
        Term::Var(v) => match want {
            Some(c) => out.insert(*v, c).is_none_or(|old| old == c),
            None => false,
        },
        Term::Op(g, args) => {
            let p = &sig.generators[*g].profile;
            args.len() == p.arity() && args.iter().zip(&p.inputs).all(|(a, &c)| leaf_colours(a, sig, out, Some(c)))
        }
    }
}

impl Env {
    fn new() -> Env {
        Env {
            budget: 6,
            trunc: 2,
            size: 5,
            sets: BTreeMap::new(),
            graphs: BTreeMap::new(),
            cats: BTreeMap::new(),
            profs: BTreeMap::new(),
            mats: BTreeMap::new(),
            sigs: BTreeMap::new(),
            colours: BTreeMap::new(),
            mcats: BTreeMap::new(),
            presentations: BTreeMap::new(),
            mprofs: BTreeMap::new(),
            order: Vec::new(),
            size_given: false,
        }
    }

    /// Last declared name of a given kind.
    pub fn last(&self, kind: &str) -> Option<&str> {
        self.order.iter().rev().find(|(_, k)| *k == kind).map(|(n, _)| n.as_str())
    }

    fn category(&self, d: &CatDef, line: usize) -> Result<FinCategory> {
        match d {
            CatDef::Discrete(s) => Ok(FinCategory::discrete(lookup(&self.sets, s, "set", line)?.clone())),
            CatDef::Free { graph, relations } => {
                let g = lookup(&self.graphs, graph, "graph", line)?.clone();
                let sat = if relations.is_empty() {
                    free_category(g, self.budget)?
                } else {
                    let path = |p: &PathExpr| -> Result<Path> {
                        match p {
                            PathExpr::Id(x) => Ok(Path::identity(index_in(&g.vertices, x, line)?)),
                            PathExpr::Word(w) => {
                                let mut edges = Vec::new();
                                for e in w.iter().rev() {
                                    match g.edge_labels.iter().position(|l| l == e) {
                                        Some(i) => edges.push(i),
                                        None => return at(line, format!("unknown edge '{e}'")),
                                    }
                                }
                                Ok(Path { start: g.edges[edges[0]].0, edges })
                            }
                        }
                    };
                    let rels = relations.iter().map(|(a, b)| Ok((path(a)?, path(b)?))).collect::<Result<Vec<_>>>()?;
                    let longest = rels.iter().map(|(a, b)| a.edges.len().max(b.edges.len())).max().unwrap_or(0);
                    saturate(&CatPresentation::new(g.clone(), rels, self.budget.max(longest))?)?
                };
                match sat {
                    Saturation::Closed(p) => Ok(p.category),
                    Saturation::Truncated(t) => Err(Error::Truncated(format!("line {line}: saturation stopped at budget {}: {}", t.budget, t.reason))),
                }
            }
            CatDef::Table { objects, arrows, compose } => {
                let obj = FinSet::labelled(objects.iter().cloned())?;
                let n = obj.size;
                let mut labels: Vec<String> = objects.iter().map(|o| format!("id_{o}")).collect();
                let (mut src, mut tgt): (Vec<usize>, Vec<usize>) = ((0..n).collect(), (0..n).collect());
                for (a, s, t) in arrows {
                    labels.push(a.clone());
                    src.push(index_in(&obj, s, line)?);
                    tgt.push(index_in(&obj, t, line)?);
                }
                let mors = FinSet::labelled(labels.clone())?;
                let m = mors.size;
                let mut table = vec![usize::MAX; m * m];
                for (g, f, h) in compose {
                    let (g, f) = (index_in(&mors, g, line)?, index_in(&mors, f, line)?);
                    let h = match h {
                        PathExpr::Id(x) => index_in(&obj, x, line)?,
                        PathExpr::Word(w) if w.len() == 1 => index_in(&mors, &w[0], line)?,
                        PathExpr::Word(_) => return at(line, "a composite must name a single arrow"),
                    };
                    table[g * m + f] = h;
                }
                for g in 0..m {
                    for f in 0..m {
                        if tgt[f] == src[g] && table[g * m + f] == usize::MAX {
                            if g < n {
                                table[g * m + f] = f;
                            } else if f < n {
                                table[g * m + f] = g;
                            } else {
                                return at(line, format!("missing composite {}.{}", labels[g], labels[f]));
                            }
                        }
                    }
                }
                FinCategory::new(obj, mors, src, tgt, (0..n).collect(), |g, f| table[g * m + f])
            }
        }
    }

    fn profunctor(&self, src: &str, tgt: &str, d: &ProfDef, line: usize) -> Result<Profunctor> {
        let a = lookup(&self.cats, src, "category", line)?;
        let b = lookup(&self.cats, tgt, "category", line)?;
        match d {
            ProfDef::Hom(c) => {
                if c != src || c != tgt {
                    return Err(Error::Boundary(format!("line {line}: hom({c}) is a profunctor {c} -> {c}")));
                }
                Ok(Profunctor::identity(a))
            }
            ProfDef::Table { elements, left, right } => {
                let mut entries = vec![vec![0usize; a.num_objects()]; b.num_objects()];
                let mut located = Vec::new();
                for (e, y, x) in elements {
                    let (y, x) = (index_in(&b.objects, y, line)?, index_in(&a.objects, x, line)?);
                    located.push((e.clone(), y, x, entries[y][x]));
                    entries[y][x] += 1;
                }
                let mat = Mat::new(a.num_objects(), b.num_objects(), |y, x| entries[y][x]);
                let layout = crate::promod::Layout::new(&mat);
                let global = |name: &str| -> Result<usize> {
                    match located.iter().find(|l| l.0 == name) {
                        Some(&(_, y, x, i)) => Ok(layout.element(y, x, i)),
                        None => at(line, format!("unknown element '{name}'")),
                    }
                };
                let mor = |c: &FinCategory, name: &str| -> Result<usize> {
                    (0..c.num_morphisms()).find(|&f| c.morphism_label(f) == name).map_or_else(|| at(line, format!("unknown arrow '{name}'")), Ok)
                };
                let total = layout.len();
                let mut lt = vec![usize::MAX; b.num_morphisms() * total];
                for (g, p, q) in left {
                    lt[mor(b, g)? * total + global(p)?] = global(q)?;
                }
                let mut rt = vec![usize::MAX; total * a.num_morphisms()];
                for (p, f, q) in right {
                    rt[global(p)? * a.num_morphisms() + mor(a, f)?] = global(q)?;
                }
                let na = a.num_morphisms();
                let missing = std::cell::Cell::new(None);
                let p = Profunctor::new(
                    a.clone(),
                    b.clone(),
                    mat,
                    |g, t| match lt[g * total + t] {
                        usize::MAX if b.is_identity(g) => t,
                        usize::MAX => {
                            missing.set(Some(format!("left action of {} on element {t}", b.morphism_label(g))));
                            t
                        }
                        v => v,
                    },
                    |t, f| match rt[t * na + f] {
                        usize::MAX if a.is_identity(f) => t,
                        usize::MAX => {
                            missing.set(Some(format!("right action of {} on element {t}", a.morphism_label(f))));
                            t
                        }
                        v => v,
                    },
                );
                if let Some(m) = missing.take() {
                    return at(line, format!("missing {m}"));
                }
                p
            }
        }
    }

    fn multicat(&mut self, name: &str, d: &McatDef, line: usize) -> Result<SymMulticat> {
        match d {
            McatDef::Discrete(s) => Ok(SymMulticat::discrete(lookup(&self.sets, s, "set", line)?.size, self.trunc)),
            McatDef::Cyclic(n) => {
                if *n == 0 {
                    return at(line, "cyclic(0) is not a group");
                }
                cyclic_multicat(*n, self.trunc)
            }
            McatDef::Free { sig, relations } => {
                let s = lookup(&self.sigs, sig, "signature", line)?.clone();
                let mut rels = Vec::new();
                for (l, r) in relations {
                    let (lt, rt) = (term_of(l, &s, line)?, term_of(r, &s, line)?);
                    let mut colours = BTreeMap::new();
                    let top = s.output(&lt, &[]).or_else(|| match &lt {
                        Term::Op(g, _) => Some(s.generators[*g].profile.output),
                        Term::Var(_) => None,
                    });
                    let ok = leaf_colours(&lt, &s, &mut colours, None) || matches!(lt, Term::Var(_));
                    let ok = ok && (leaf_colours(&rt, &s, &mut colours, None) || matches!(rt, Term::Var(_)));
                    let inputs: Vec<usize> = (0..colours.len()).map(|v| colours.get(&v).copied().unwrap_or(usize::MAX)).collect();
                    let output = top.or_else(|| match &rt {
                        Term::Op(g, _) => Some(s.generators[*g].profile.output),
                        Term::Var(_) => None,
                    });
                    let Some(output) = output.filter(|_| ok && !inputs.contains(&usize::MAX)) else {
                        return at(line, format!("cannot type the relation {l} = {r}"));
                    };
                    rels.push(Relation { lhs: lt, rhs: rt, profile: Profile::new(inputs, output) });
                }
                let pres = Presentation::new(s, rels).map_err(|e| Error::Syntax { line, col: 1, msg: e.to_string() })?;
                let table = materialise(pres.clone(), Bounds::new(self.size, self.trunc), u128::MAX)?;
                self.presentations.insert(name.to_string(), pres);
                Ok(table.table)
            }
        }
    }

    fn multiprofunctor(&self, src: &str, tgt: &str, d: &MprofDef, line: usize) -> Result<MultiProfunctor> {
        let m = lookup(&self.mcats, src, "multicategory", line)?;
        let n = lookup(&self.mcats, tgt, "multicategory", line)?;
        match d {
            MprofDef::Identity(x) => {
                if x != src || x != tgt {
                    return Err(Error::Boundary(format!("line {line}: identity({x}) is a multiprofunctor {x} -> {x}")));
                }
                Ok(MultiProfunctor::identity(m))
            }
            MprofDef::Free(gens) => {
                let colour = |mc: &str, c: &str| -> Result<usize> {
                    match self.colours[mc].index_of(c) {
                        Some(i) => Ok(i),
                        None => at(line, format!("unknown colour '{c}' of {mc}")),
                    }
                };
                let mut list = Vec::new();
                for g in gens {
                    let inputs = g.inputs.iter().map(|c| colour(tgt, c)).collect::<Result<Vec<_>>>()?;
                    list.push((Profile::new(inputs, colour(src, &g.output)?), g.fixed));
                }
                let x = generator_sequence(m.colours, n.colours, &list, self.trunc)?;
                Ok(crate::opdkit::free_multibimodule(&x, m, n, u128::MAX)?.module)
            }
        }
    }
}

/// Elaborates every declaration in order, running each structure's axiom check.
pub fn elaborate(doc: &SpecDocument) -> Result<Env> {
    let mut env = Env::new();
    for d in &doc.decls {
        let line = d.line;
        let name = d.name.clone();
        match &d.kind {
            DeclKind::Budget(b) => env.budget = *b,
            DeclKind::Trunc(t) => {
                env.trunc = *t;
                if !env.size_given {
                    env.size = t + 3;
                }
            }
            DeclKind::Size(s) => {
                env.size = *s;
                env.size_given = true;
            }
            DeclKind::Set(elems) => {
                let s = FinSet::labelled(elems.iter().cloned()).map_err(|e| Error::Syntax { line, col: 1, msg: e.to_string() })?;
                env.sets.insert(name.clone(), s);
                env.order.push((name, "set"));
            }
            DeclKind::Graph { set, edges } => {
                let v = lookup(&env.sets, set, "set", line)?.clone();
                let mut es = Vec::new();
                for (e, s, t) in edges {
                    es.push((index_in(&v, s, line)?, index_in(&v, t, line)?, e.clone()));
                }
                env.graphs.insert(name.clone(), Graph::labelled(v, es));
                env.order.push((name, "graph"));
            }
            DeclKind::Mat { src, tgt, rows } => {
                let a = lookup(&env.sets, src, "set", line)?.size;
                let b = lookup(&env.sets, tgt, "set", line)?.size;
                if rows.len() != b || rows.iter().any(|r| r.len() != a) {
                    return Err(Error::Boundary(format!("line {line}: expected {b} rows of {a} entries")));
                }
                env.mats.insert(name.clone(), Mat::from_entries(a, b, rows.concat())?);
                env.order.push((name, "mat"));
            }
            DeclKind::Cat(c) => {
                let cat = env.category(c, line)?;
                env.cats.insert(name.clone(), cat);
                env.order.push((name, "cat"));
            }
            DeclKind::Prof { src, tgt, def } => {
                let p = env.profunctor(src, tgt, def, line)?;
                env.profs.insert(name.clone(), p);
                env.order.push((name, "prof"));
            }
            DeclKind::Sig { set, ops } => {
                let colours = match set {
                    Some(set) => lookup(&env.sets, set, "set", line)?.clone(),
                    None => {
                        let mut names: Vec<String> = Vec::new();
                        for (_, inputs, output) in ops {
                            for c in inputs.iter().chain([output]) {
                                if !names.contains(c) {
                                    names.push(c.clone());
                                }
                            }
                        }
                        FinSet::labelled(names)?
                    }
                };
                let mut gens = Vec::new();
                for (g, inputs, output) in ops {
                    if var_index(g).is_some() {
                        return at(line, format!("'{g}' is reserved for variables"));
                    }
                    let inputs = inputs.iter().map(|c| index_in(&colours, c, line)).collect::<Result<Vec<_>>>()?;
                    gens.push(Generator { name: g.clone(), profile: Profile::new(inputs, index_in(&colours, output, line)?) });
                }
                env.sigs.insert(name.clone(), Signature::new(colours.size, gens)?);
                env.colours.insert(name.clone(), colours);
                env.order.push((name, "sig"));
            }
            DeclKind::Mcat(m) => {
                let mc = env.multicat(&name, m, line)?;
                let colours = match m {
                    McatDef::Discrete(s) => env.sets[s].clone(),
                    McatDef::Cyclic(_) => FinSet::new(1),
                    McatDef::Free { sig, .. } => env.colours[sig].clone(),
                };
                env.colours.insert(name.clone(), colours);
                env.mcats.insert(name.clone(), mc);
                env.order.push((name, "mcat"));
            }
            DeclKind::Mprof { src, tgt, def } => {
                let p = env.multiprofunctor(src, tgt, def, line)?;
                env.mprofs.insert(name.clone(), p);
                env.order.push((name, "mprof"));
            }
        }
    }
    Ok(env)
}

fn identifier(label: &str, fallback: String, taken: &mut std::collections::HashSet<String>) -> String {
    let clean: String = label.chars().map(|c| if c.is_alphanumeric() || c == '_' { c } else { '_' }).collect();
    let clean = clean.trim_matches('_').to_string();
    let name = if clean.is_empty() || var_index(&clean).is_some() || clean == "id" || taken.contains(&clean) { fallback } else { clean };
    taken.insert(name.clone());
    name
}

/// A category written out as a table declaration, so results can be read back.
pub fn category_decl(name: &str, c: &FinCategory) -> Decl {
    let mut taken = std::collections::HashSet::new();
    let objects: Vec<String> = (0..c.num_objects()).map(|x| identifier(&c.object_label(x), format!("o{x}"), &mut taken)).collect();
    for x in &objects {
        taken.insert(format!("id_{x}"));
    }
    let mut names = vec![String::new(); c.num_morphisms()];
    let mut arrows = Vec::new();
    for f in 0..c.num_morphisms() {
        if c.is_identity(f) {
            names[f] = format!("id_{}", objects[c.src(f)]);
        } else {
            names[f] = identifier(&c.morphism_label(f), format!("m{f}"), &mut taken);
            arrows.push((names[f].clone(), objects[c.src(f)].clone(), objects[c.tgt(f)].clone()));
        }
    }
    let mut compose = Vec::new();
    for g in c.non_identities() {
        for f in c.non_identities() {
            if let Some(h) = c.compose(g, f) {
                let r = if c.is_identity(h) { PathExpr::Id(objects[c.src(h)].clone()) } else { PathExpr::Word(vec![names[h].clone()]) };
                compose.push((names[g].clone(), names[f].clone(), r));
            }
        }
    }
    Decl { name: name.to_string(), kind: DeclKind::Cat(CatDef::Table { objects, arrows, compose }), line: 0 }
}

/// A matrix declaration over index sets `src` and `tgt`.
pub fn matrix_decl(name: &str, src: &str, tgt: &str, m: &Mat) -> Decl {
    let rows = (0..m.tgt.size).map(|b| (0..m.src.size).map(|a| m.entry(b, a)).collect()).collect();
    Decl { name: name.to_string(), kind: DeclKind::Mat { src: src.to_string(), tgt: tgt.to_string(), rows }, line: 0 }
}
