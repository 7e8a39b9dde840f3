//! Product notation for caps and colored states:
//! `arc[a,b]`, `arc[c, A[l1, l2, ...]]` and `V[a,b]`, separated by
//! whitespace, `*` or `·`.

use crate::cap::Cap;
use crate::error::{Error, Result};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Arc(u16, u16),
    /// Color and the labels of the pieces making up one circle.
    Colored(u8, Vec<u16>),
    V(u16, u16),
}

/// Byte range of a factor in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotationExpr {
    pub factors: Vec<(Factor, Span)>,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, start: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { start, end: self.pos.max(start + 1).min(self.text.len().max(start)), msg: msg.into() })
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Whitespace and factor separators.
    fn skip_separators(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() || c == '*' || c == '·' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_space();
        if self.text[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{tok}`"))
        }
    }

    fn int(&mut self) -> Result<u16> {
        self.skip_space();
        let start = self.pos;
        let digits = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err(start, "expected a number");
        }
        self.pos += digits;
        match self.text[start..self.pos].parse::<u16>() {
            Ok(0) => self.err(start, "labels start at 1"),
            Ok(v) => Ok(v),
            Err(_) => self.err(start, "number too large"),
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let start = self.pos;
        if self.eat("arc") {
            self.expect("[")?;
            let a = self.int()?;
            self.expect(",")?;
            if self.eat("A") {
                self.expect("[")?;
                let mut labels = vec![self.int()?];
                while self.eat(",") {
                    labels.push(self.int()?);
                }
                self.expect("]")?;
                self.expect("]")?;
                if a > u8::MAX as u16 {
                    return self.err(start, "color out of range");
                }
                Ok(Factor::Colored(a as u8, labels))
            } else {
                let b = self.int()?;
                self.expect("]")?;
                Ok(Factor::Arc(a, b))
            }
        } else if self.eat("V") {
            self.expect("[")?;
            let a = self.int()?;
            self.expect(",")?;
            let b = self.int()?;
            self.expect("]")?;
            Ok(Factor::V(a, b))
        } else {
            self.err(start, "expected `arc[` or `V[`")
        }
    }
}

pub fn parse(text: &str) -> Result<NotationExpr> {
    let mut lx = Lexer { text, pos: 0 };
    let mut factors = Vec::new();
    loop {
        lx.skip_separators();
        if lx.pos == text.len() {
            break;
        }
        let start = lx.pos;
        let f = lx.factor()?;
        factors.push((f, Span { start, end: lx.pos }));
    }
    if factors.is_empty() {
        return lx.err(0, "empty expression");
    }
    Ok(NotationExpr { factors })
}

impl NotationExpr {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, (f, _)) in self.factors.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            match f {
                Factor::Arc(a, b) => {
                    let _ = write!(out, "arc[{a},{b}]");
                }
                Factor::Colored(c, ls) => {
                    let _ = write!(out, "arc[{c}, A[{}]]", join(ls));
                }
                Factor::V(a, b) => {
                    let _ = write!(out, "V[{a},{b}]");
                }
            }
        }
        out
    }
}

fn join(ls: &[u16]) -> String {
    ls.iter().map(u16::to_string).collect::<Vec<_>>().join(", ")
}

fn err_at<T>(span: Span, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { start: span.start, end: span.end, msg: msg.into() })
}

/// Arcs (as side pairs, optionally colored) and interactions read off an
/// expression that describes a cap.
type CapParts = (Vec<(u8, u8)>, Vec<Option<u8>>, Vec<(u16, u16, Span)>);

fn cap_parts(expr: &NotationExpr) -> Result<CapParts> {
    let mut arcs = Vec::new();
    let mut spans = Vec::new();
    let mut colors = Vec::new();
    let mut vs = Vec::new();
    for (f, span) in &expr.factors {
        match f {
            Factor::Arc(a, b) => {
                arcs.push(side_pair(*a, *b, *span)?);
                colors.push(None);
            }
            Factor::Colored(c, ls) => {
                if ls.len() != 2 {
                    return err_at(*span, "a cap arc has exactly two sides");
                }
                arcs.push(side_pair(ls[0], ls[1], *span)?);
                colors.push(Some(*c));
            }
            Factor::V(a, b) => {
                vs.push((*a, *b, *span));
                continue;
            }
        }
        spans.push(*span);
    }
    let k = arcs.len();
    let mut seen = vec![false; 2 * k + 1];
    for (span, &(a, b)) in spans.iter().zip(&arcs) {
        for s in [a, b] {
            if s as usize > 2 * k {
                return err_at(*span, format!("side {s} out of range 1..{}", 2 * k));
            }
            if std::mem::replace(&mut seen[s as usize], true) {
                return err_at(*span, format!("side {s} used twice"));
            }
        }
    }
    Ok((arcs, colors, vs))
}

fn side_pair(a: u16, b: u16, span: Span) -> Result<(u8, u8)> {
    if a == b {
        return err_at(span, format!("arc joins side {a} to itself"));
    }
    if a > u8::MAX as u16 || b > u8::MAX as u16 {
        return err_at(span, "side out of range");
    }
    Ok((a as u8, b as u8))
}

fn build_cap(arcs: &[(u8, u8)], vs: &[(u16, u16, Span)]) -> Result<Cap> {
    let arc_with = |s: u16, span: Span| -> Result<usize> {
        match arcs.iter().position(|&(a, b)| a as u16 == s || b as u16 == s) {
            Some(i) => Ok(i),
            None => err_at(span, format!("no arc at side {s}")),
        }
    };
    let mut inter = Vec::new();
    for &(a, b, span) in vs {
        let (i, j) = (arc_with(a, span)?, arc_with(b, span)?);
        if i == j {
            return err_at(span, "interaction of an arc with itself");
        }
        inter.push((i, j));
    }
    Cap::new(arcs, &inter).map_err(|e| match e {
        Error::Cap(msg) => Error::Parse { start: 0, end: 0, msg },
        other => other,
    })
}

pub fn parse_cap(text: &str) -> Result<Cap> {
    let expr = parse(text)?;
    let (arcs, colors, vs) = cap_parts(&expr)?;
    if colors.iter().any(Option::is_some) {
        return err_at(expr.factors[0].1, "colored arcs in an uncolored cap");
    }
    build_cap(&arcs, &vs)
}

/// A cap with one color per arc, in the cap's canonical arc order.
pub fn parse_colored_cap(text: &str) -> Result<(Cap, Vec<u8>)> {
    let expr = parse(text)?;
    let (arcs, colors, vs) = cap_parts(&expr)?;
    let colors: Vec<u8> = match colors.iter().copied().collect::<Option<Vec<u8>>>() {
        Some(c) => c,
        None => return err_at(expr.factors[0].1, "every arc needs a color"),
    };
    let cap = build_cap(&arcs, &vs)?;
    let mut out = vec![0; cap.spokes()];
    for (&(a, _), &c) in arcs.iter().zip(&colors) {
        out[cap.arc_of_side(a)] = c;
    }
    Ok((cap, out))
}

pub fn render_colored_cap(cap: &Cap, colors: &[u8]) -> String {
    let mut order: Vec<usize> = (0..cap.spokes()).collect();
    order.sort_by_key(|&i| (colors[i], cap.arcs()[i]));
    let mut out = String::new();
    for i in order {
        let (a, b) = cap.arcs()[i];
        let _ = write!(out, "arc[{}, A[{a}, {b}]] ", colors[i]);
    }
    for (i, j) in cap.interactions() {
        let _ = write!(out, "V[{}, {}] ", cap.arcs()[i].0, cap.arcs()[j].0);
    }
    out.truncate(out.trim_end().len());
    out
}

/// Circles with their colors and labels, plus interactions named by the
/// smallest label of each circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredState {
    pub circles: Vec<(u8, Vec<u16>)>,
    pub interactions: Vec<(u16, u16)>,
}

impl ColoredState {
    /// Canonical form: labels sorted, circles by (color, length, labels),
    /// interactions as sorted distinct pairs.
    pub fn canonical(mut self) -> ColoredState {
        for (_, ls) in self.circles.iter_mut() {
            ls.sort_unstable();
        }
        self.circles.sort_by(|a, b| (a.0, a.1.len(), &a.1).cmp(&(b.0, b.1.len(), &b.1)));
        for p in self.interactions.iter_mut() {
            *p = (p.0.min(p.1), p.0.max(p.1));
        }
        self.interactions.sort_unstable();
        self.interactions.dedup();
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (c, ls) in &self.circles {
            let _ = write!(out, "arc[{c}, A[{}]] ", join(ls));
        }
        for (a, b) in &self.interactions {
            let _ = write!(out, "V[{a}, {b}] ");
        }
        out.truncate(out.trim_end().len());
        out
    }
}

pub fn parse_colored_state(text: &str) -> Result<ColoredState> {
    let expr = parse(text)?;
    let mut circles = Vec::new();
    let mut interactions = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut mins = std::collections::HashSet::new();
    for (f, span) in &expr.factors {
        match f {
            Factor::Colored(c, ls) => {
                for &l in ls {
                    if !seen.insert(l) {
                        return err_at(*span, format!("label {l} used twice"));
                    }
                }
                mins.insert(*ls.iter().min().expect("non-empty"));
                circles.push((*c, ls.clone()));
            }
            Factor::Arc(..) => return err_at(*span, "expected `arc[c, A[...]]`"),
            Factor::V(a, b) => {
                if a == b {
                    return err_at(*span, "interaction of a circle with itself");
                }
                interactions.push((*a, *b, *span));
            }
        }
    }
    let mut out = Vec::new();
    for (a, b, span) in interactions {
        for x in [a, b] {
            if !mins.contains(&x) {
                return err_at(span, format!("no circle has smallest label {x}"));
            }
        }
        out.push((a, b));
    }
    Ok(ColoredState { circles, interactions: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_product() {
        let cap = parse_cap("arc[1,5]·arc[2,3]·arc[4,12]·arc[6,7]·arc[8,9]·arc[10,11]·V[1,4]*V[2,6] V[4,6]").unwrap();
        assert_eq!(cap.spokes(), 6);
        assert_eq!(cap.interactions().count(), 3);
    }

    #[test]
    fn errors_carry_spans() {
        match parse_cap("arc[1,2] arc[1,1]") {
            Err(Error::Parse { start, end, .. }) => assert_eq!((start, end), (9, 17)),
            other => panic!("{other:?}"),
        }
        match parse("arc[1,2] foo") {
            Err(Error::Parse { start, .. }) => assert_eq!(start, 9),
            other => panic!("{other:?}"),
        }
        assert!(parse("arc[1, A[]]").is_err());
        assert!(parse("arc[1,2").is_err());
        assert!(parse("V[0,2]").is_err());
        assert!(parse_cap("arc[1,2] arc[3,9]").is_err());
        assert!(parse_cap("arc[1,4] arc[2,3] arc[1,3]").is_err());
    }

    #[test]
    fn colored_cap_round_trip() {
        let text = "arc[1, A[1, 12]] arc[1, A[4, 9]] arc[2, A[2, 11]] arc[2, A[3, 10]] \
                    arc[2, A[6, 7]] arc[3, A[5, 8]] V[1, 3] V[1, 6] V[4, 6]";
        let (cap, colors) = parse_colored_cap(text).unwrap();
        assert_eq!(colors, vec![1, 2, 2, 1, 3, 2]);
        assert_eq!(render_colored_cap(&cap, &colors), text);
    }
}
