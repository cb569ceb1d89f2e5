//! The `.tm` script language: lexer, recursive-descent parser and printer.
//!
//! ```text
//! variety X { rays = [[1, 0], [0, 1]]; cones = [[1, 2]]; vars = [x1, x2]; }
//! variety Y { weights = [[1, 1, 1], [2, 1, 0]]; torsion = [3];
//!             irrelevant = [[y2, y3], [y1, y3], [y1, y2]]; }
//! map phi : X -> Y { y1 = root(x1, 2); y2 = x2 * root(x1, 2); }
//! ideal I on Y { gens = [y1^2, y1*y2]; }
//! preimage phi of I saturate;
//! ```
//!
//! Cones are 1-based lists of ray indices. In a Cox presentation the last
//! `torsion.len()` rows of `weights` are torsion rows with the given orders.

use std::fmt;

use toricmap_core::BigInt;

/// 1-based line and column.
///
/// Positions are metadata: they never take part in equality, so a printed
/// and reparsed script compares equal to the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Type,
}

/// A syntax or type error at a source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub pos: Pos,
    pub kind: ErrorKind,
    pub message: String,
}

impl ScriptError {
    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        ScriptError { pos, kind: ErrorKind::Syntax, message: message.into() }
    }

    pub fn type_error(pos: Pos, message: impl Into<String>) -> Self {
        ScriptError { pos, kind: ErrorKind::Type, message: message.into() }
    }
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Type => "error",
        };
        write!(f, "{}: {}: {}", self.pos, kind, self.message)
    }
}

impl std::error::Error for ScriptError {}

// ---------------------------------------------------------------------------
// AST

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Root(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyBody {
    Fan { rays: Vec<Vec<i64>>, cones: Vec<Vec<i64>> },
    Cox { weights: Vec<Vec<i64>>, torsion: Vec<i64>, irrelevant: Vec<Vec<Ident>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyDecl {
    pub name: Ident,
    pub body: VarietyBody,
    pub vars: Option<Vec<Ident>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
    pub assignments: Vec<(Ident, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: Ident,
    pub on: Ident,
    pub gens: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check(Ident),
    Complete(Ident),
    Eval { map: Ident, point: Vec<Expr> },
    /// `name = outer ∘ inner`
    Compose { outer: Ident, inner: Ident, name: Ident },
    Image { map: Ident, ideal: Option<Ident> },
    Preimage { map: Ident, ideal: Ident, saturate: bool },
    Pullback { map: Ident, expr: Expr },
    SameMap(Ident, Ident),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandStmt {
    pub command: Command,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Variety(VarietyDecl),
    Map(MapDecl),
    Ideal(IdealDecl),
    Command(CommandStmt),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub items: Vec<Item>,
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{}`", s),
            Tok::Int(n) => write!(f, "`{}`", n),
            Tok::Sym(s) => write!(f, "`{}`", s),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const SYMBOLS: &[&str] = &["->", "{", "}", "[", "]", "(", ")", ";", ",", "=", ":", "+", "-", "*", "/", "^"];

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ScriptError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                s.push(chars[i]);
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                for _ in 0..s.len() {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
                out.push((Tok::Sym(s), pos));
            }
            None => return Err(ScriptError::syntax(pos, format!("unexpected character `{}`", c))),
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

// ---------------------------------------------------------------------------
// parser

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, ScriptError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        Err(ScriptError::syntax(self.pos(), format!("expected {}, found {}", wanted, self.peek())))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == w)
    }

    fn sym(&mut self, s: &str) -> PResult<Pos> {
        if self.is_sym(s) {
            Ok(self.bump().1)
        } else {
            self.unexpected(&format!("`{}`", s))
        }
    }

    fn word(&mut self, w: &str) -> PResult<Pos> {
        if self.is_word(w) {
            Ok(self.bump().1)
        } else {
            self.unexpected(&format!("`{}`", w))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.bump().1;
                Ok(Ident { name, pos })
            }
            _ => self.unexpected("a name"),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = if self.is_sym("-") {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let n = if neg { -n } else { n };
                i64::try_from(&n).map_err(|_| ScriptError::syntax(pos, "integer out of range"))
            }
            _ => self.unexpected("an integer"),
        }
    }

    /// `[a, b, ...]` with a trailing comma allowed.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.sym("[")?;
        let mut out = Vec::new();
        while !self.is_sym("]") {
            out.push(item(self)?);
            if !self.is_sym("]") {
                self.sym(",")?;
            }
        }
        self.sym("]")?;
        Ok(out)
    }

    fn script(&mut self) -> PResult<Script> {
        let mut items = Vec::new();
        while *self.peek() != Tok::Eof {
            items.push(self.item()?);
        }
        Ok(Script { items })
    }

    fn item(&mut self) -> PResult<Item> {
        let pos = self.pos();
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => return self.unexpected("a declaration or command"),
        };
        match word.as_str() {
            "variety" => self.variety().map(Item::Variety),
            "map" => self.map().map(Item::Map),
            "ideal" => self.ideal().map(Item::Ideal),
            _ => {
                let command = self.command()?;
                self.sym(";")?;
                Ok(Item::Command(CommandStmt { command, pos }))
            }
        }
    }

    fn variety(&mut self) -> PResult<VarietyDecl> {
        self.word("variety")?;
        let name = self.ident()?;
        self.sym("{")?;
        let mut rays = None;
        let mut cones = None;
        let mut weights = None;
        let mut torsion = None;
        let mut irrelevant = None;
        let mut vars = None;
        while !self.is_sym("}") {
            let field = self.ident()?;
            self.sym("=")?;
            let dup = |set: bool| {
                if set {
                    Err(ScriptError::syntax(field.pos, format!("field `{}` given twice", field.name)))
                } else {
                    Ok(())
                }
            };
            match field.name.as_str() {
                "rays" => {
                    dup(rays.is_some())?;
                    rays = Some(self.list(|p| p.list(Parser::int))?);
                }
                "cones" => {
                    dup(cones.is_some())?;
                    cones = Some(self.list(|p| p.list(Parser::int))?);
                }
                "weights" => {
                    dup(weights.is_some())?;
                    weights = Some(self.list(|p| p.list(Parser::int))?);
                }
                "torsion" => {
                    dup(torsion.is_some())?;
                    torsion = Some(self.list(Parser::int)?);
                }
                "irrelevant" => {
                    dup(irrelevant.is_some())?;
                    irrelevant = Some(self.list(|p| p.list(Parser::ident))?);
                }
                "vars" => {
                    dup(vars.is_some())?;
                    vars = Some(self.list(Parser::ident)?);
                }
                other => return Err(ScriptError::syntax(field.pos, format!("unknown variety field `{}`", other))),
            }
            self.sym(";")?;
        }
        self.sym("}")?;
        let fan = rays.is_some() || cones.is_some();
        let cox = weights.is_some() || torsion.is_some() || irrelevant.is_some();
        let body = match (fan, cox) {
            (true, true) => {
                return Err(ScriptError::syntax(name.pos, "a variety takes either rays/cones or weights/torsion/irrelevant"))
            }
            (true, false) => match (rays, cones) {
                (Some(rays), Some(cones)) => VarietyBody::Fan { rays, cones },
                _ => return Err(ScriptError::syntax(name.pos, "a fan needs both `rays` and `cones`")),
            },
            (false, _) => VarietyBody::Cox {
                weights: weights.unwrap_or_default(),
                torsion: torsion.unwrap_or_default(),
                irrelevant: irrelevant.unwrap_or_default(),
            },
        };
        Ok(VarietyDecl { name, body, vars })
    }

    fn map(&mut self) -> PResult<MapDecl> {
        self.word("map")?;
        let name = self.ident()?;
        self.sym(":")?;
        let source = self.ident()?;
        self.sym("->")?;
        let target = self.ident()?;
        self.sym("{")?;
        let mut assignments = Vec::new();
        while !self.is_sym("}") {
            let var = self.ident()?;
            self.sym("=")?;
            let e = self.expr()?;
            self.sym(";")?;
            assignments.push((var, e));
        }
        self.sym("}")?;
        Ok(MapDecl { name, source, target, assignments })
    }

    fn ideal(&mut self) -> PResult<IdealDecl> {
        self.word("ideal")?;
        let name = self.ident()?;
        self.word("on")?;
        let on = self.ident()?;
        self.sym("{")?;
        self.word("gens")?;
        self.sym("=")?;
        let gens = self.list(Parser::expr)?;
        self.sym(";")?;
        self.sym("}")?;
        Ok(IdealDecl { name, on, gens })
    }

    fn command(&mut self) -> PResult<Command> {
        let verb = self.ident()?;
        Ok(match verb.name.as_str() {
            "check" => Command::Check(self.ident()?),
            "complete" => Command::Complete(self.ident()?),
            "eval" => {
                let map = self.ident()?;
                self.word("at")?;
                let point = self.list(Parser::expr)?;
                Command::Eval { map, point }
            }
            "compose" => {
                let outer = self.ident()?;
                let inner = self.ident()?;
                self.word("as")?;
                let name = self.ident()?;
                Command::Compose { outer, inner, name }
            }
            "image" => {
                let map = self.ident()?;
                let ideal = if self.is_word("of") {
                    self.bump();
                    Some(self.ident()?)
                } else {
                    None
                };
                Command::Image { map, ideal }
            }
            "preimage" => {
                let map = self.ident()?;
                self.word("of")?;
                let ideal = self.ident()?;
                let saturate = self.is_word("saturate");
                if saturate {
                    self.bump();
                }
                Command::Preimage { map, ideal, saturate }
            }
            "pullback" => {
                let map = self.ident()?;
                self.word("of")?;
                Command::Pullback { map, expr: self.expr()? }
            }
            "same_map" => Command::SameMap(self.ident()?, self.ident()?),
            other => return Err(ScriptError::syntax(verb.pos, format!("unknown command `{}`", other))),
        })
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = if self.is_sym("+") {
                ExprKind::Add
            } else if self.is_sym("-") {
                ExprKind::Sub
            } else {
                return Ok(lhs);
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr { kind: kind(Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = if self.is_sym("*") {
                ExprKind::Mul
            } else if self.is_sym("/") {
                ExprKind::Div
            } else {
                return Ok(lhs);
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr { kind: kind(Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    // unary := '-' unary | atom ('^' unary)?
    fn unary(&mut self) -> PResult<Expr> {
        if self.is_sym("-") {
            let pos = self.bump().1;
            let e = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(e)), pos });
        }
        let base = self.atom()?;
        if self.is_sym("^") {
            let pos = self.bump().1;
            let exp = self.unary()?;
            return Ok(Expr { kind: ExprKind::Pow(Box::new(base), Box::new(exp)), pos });
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Num(n), pos })
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "root" && self.toks.get(self.at + 1).map(|t| &t.0) == Some(&Tok::Sym("(")) => {
                self.bump();
                self.bump();
                let e = self.expr()?;
                if self.is_sym(")") {
                    return Err(ScriptError::syntax(pos, "`root` takes 2 arguments (expression, index), found 1"));
                }
                self.sym(",")?;
                let ipos = self.pos();
                let r = match self.peek().clone() {
                    Tok::Int(n) => {
                        self.bump();
                        u32::try_from(&n).ok().filter(|&r| r > 0)
                    }
                    _ => None,
                };
                let r = r.ok_or_else(|| ScriptError::syntax(ipos, "root index must be a positive integer"))?;
                if self.is_sym(",") {
                    return Err(ScriptError::syntax(self.pos(), "`root` takes 2 arguments (expression, index)"));
                }
                self.sym(")")?;
                Ok(Expr { kind: ExprKind::Root(Box::new(e), r), pos })
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Var(name), pos })
            }
            _ => self.unexpected("an expression"),
        }
    }
}

/// Parse a script. The empty text is the empty script.
pub fn parse(text: &str) -> Result<Script, ScriptError> {
    let toks = lex(text)?;
    Parser { toks, at: 0 }.script()
}

/// Parse a single expression (used for ad-hoc pullbacks and tests).
pub fn parse_expr(text: &str) -> Result<Expr, ScriptError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of input");
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// printer

fn prec(e: &Expr) -> u8 {
    match e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) | ExprKind::Div(..) => 2,
        ExprKind::Neg(..) => 3,
        ExprKind::Pow(..) => 4,
        ExprKind::Num(_) | ExprKind::Var(_) | ExprKind::Root(..) => 5,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        f.write_str("(")?;
        write_expr(f, e, 0)?;
        return f.write_str(")");
    }
    let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
        write_expr(f, a, p)?;
        f.write_str(op)?;
        write_expr(f, b, p + 1)
    };
    match &e.kind {
        ExprKind::Num(n) => write!(f, "{}", n),
        ExprKind::Var(v) => f.write_str(v),
        ExprKind::Neg(a) => {
            f.write_str("-")?;
            write_expr(f, a, 3)
        }
        ExprKind::Add(a, b) => bin(f, a, " + ", b, 1),
        ExprKind::Sub(a, b) => bin(f, a, " - ", b, 1),
        ExprKind::Mul(a, b) => bin(f, a, "*", b, 2),
        ExprKind::Div(a, b) => bin(f, a, "/", b, 2),
        ExprKind::Pow(a, b) => {
            write_expr(f, a, 5)?;
            f.write_str("^")?;
            write_expr(f, b, 3)
        }
        ExprKind::Root(a, r) => {
            f.write_str("root(")?;
            write_expr(f, a, 0)?;
            write!(f, ", {})", r)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

fn matrix<T: fmt::Display>(rows: &[Vec<T>]) -> String {
    format!("[{}]", rows.iter().map(|r| format!("[{}]", join(r))).collect::<Vec<_>>().join(", "))
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Check(m) => write!(f, "check {}", m),
            Command::Complete(m) => write!(f, "complete {}", m),
            Command::Eval { map, point } => write!(f, "eval {} at [{}]", map, join(point)),
            Command::Compose { outer, inner, name } => write!(f, "compose {} {} as {}", outer, inner, name),
            Command::Image { map, ideal: Some(i) } => write!(f, "image {} of {}", map, i),
            Command::Image { map, ideal: None } => write!(f, "image {}", map),
            Command::Preimage { map, ideal, saturate } => {
                write!(f, "preimage {} of {}{}", map, ideal, if *saturate { " saturate" } else { "" })
            }
            Command::Pullback { map, expr } => write!(f, "pullback {} of {}", map, expr),
            Command::SameMap(a, b) => write!(f, "same_map {} {}", a, b),
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Variety(v) => {
                writeln!(f, "variety {} {{", v.name)?;
                match &v.body {
                    VarietyBody::Fan { rays, cones } => {
                        writeln!(f, "  rays = {};", matrix(rays))?;
                        writeln!(f, "  cones = {};", matrix(cones))?;
                    }
                    VarietyBody::Cox { weights, torsion, irrelevant } => {
                        writeln!(f, "  weights = {};", matrix(weights))?;
                        if !torsion.is_empty() {
                            writeln!(f, "  torsion = [{}];", join(torsion))?;
                        }
                        if !irrelevant.is_empty() {
                            writeln!(f, "  irrelevant = {};", matrix(irrelevant))?;
                        }
                    }
                }
                if let Some(vars) = &v.vars {
                    writeln!(f, "  vars = [{}];", join(vars))?;
                }
                f.write_str("}")
            }
            Item::Map(m) => {
                writeln!(f, "map {} : {} -> {} {{", m.name, m.source, m.target)?;
                for (v, e) in &m.assignments {
                    writeln!(f, "  {} = {};", v, e)?;
                }
                f.write_str("}")
            }
            Item::Ideal(i) => write!(f, "ideal {} on {} {{ gens = [{}]; }}", i.name, i.on, join(&i.gens)),
            Item::Command(c) => write!(f, "{};", c.command),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{}", item)?;
        }
        Ok(())
    }
}
