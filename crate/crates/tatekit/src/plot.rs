//! Support diagrams: shaded exponent regions as ASCII grids and SVG,
//! reproducing the shaded-region figures for series supports, monomial
//! subspaces and open profiles.

use crate::geometry::OpenProfile;
use crate::lattice::MonomialSubspace;
use crate::series::{Exponents, TruncatedSeries};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error("SVG output needs a 2-axis object; use the ASCII number line for arity 1")]
    ArityUnsupported,
}

/// Cell states: member / known-nonzero, unknown-beyond-precision, absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Member,
    Unknown,
    Absent,
}

/// Anything that can shade an exponent box.
pub trait SupportLike {
    fn arity(&self) -> usize;
    fn cell(&self, e: &Exponents) -> Cell;
}

impl SupportLike for TruncatedSeries {
    fn arity(&self) -> usize {
        self.arity()
    }

    fn cell(&self, e: &Exponents) -> Cell {
        if self.coeff(e).is_some() {
            Cell::Member
        } else if !self.cert().within_precision(e) && self.cert().above_lower_bounds(e) {
            Cell::Unknown
        } else {
            Cell::Absent
        }
    }
}

impl SupportLike for MonomialSubspace {
    fn arity(&self) -> usize {
        self.arity
    }

    fn cell(&self, e: &Exponents) -> Cell {
        if self.contains_exponent(e) {
            Cell::Member
        } else {
            Cell::Absent
        }
    }
}

impl SupportLike for OpenProfile {
    fn arity(&self) -> usize {
        2
    }

    fn cell(&self, e: &Exponents) -> Cell {
        if self.contains(e) {
            Cell::Member
        } else {
            Cell::Absent
        }
    }
}

/// ASCII grid over the box `[lo, hi]^2`, rows printed with the outer
/// exponent decreasing downward. Arity-1 objects render as a number line.
pub fn ascii_plot<S: SupportLike>(obj: &S, lo: i64, hi: i64) -> String {
    let mut out = String::new();
    if obj.arity() == 1 {
        out.push_str("a1: ");
        for a in lo..=hi {
            out.push(cell_char(obj.cell(&Exponents(vec![a]))));
        }
        out.push('\n');
        out.push_str(&format!("    {}..{}\n", lo, hi));
        return out;
    }
    for b in (lo..=hi).rev() {
        out.push_str(&format!("{:>4} |", b));
        for a in lo..=hi {
            out.push(cell_char(obj.cell(&Exponents(vec![a, b]))));
        }
        out.push('\n');
    }
    out.push_str("      ");
    for _ in lo..=hi {
        out.push('-');
    }
    out.push('\n');
    out.push_str(&format!("      a1 = {}..{}, a2 downward\n", lo, hi));
    out
}

fn cell_char(c: Cell) -> char {
    match c {
        Cell::Member => '#',
        Cell::Unknown => '?',
        Cell::Absent => '.',
    }
}

/// Deterministic SVG for a 2-axis box: shaded member cells, hatched unknown
/// cells, axes through the origin.
pub fn svg_plot<S: SupportLike>(obj: &S, lo: i64, hi: i64) -> Result<String, PlotError> {
    if obj.arity() != 2 {
        return Err(PlotError::ArityUnsupported);
    }
    let cell = 14i64;
    let pad = 24i64;
    let span = hi - lo + 1;
    let width = span * cell + 2 * pad;
    let height = span * cell + 2 * pad;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = width,
        h = height
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for b in lo..=hi {
        for a in lo..=hi {
            let x = pad + (a - lo) * cell;
            let y = pad + (hi - b) * cell;
            match obj.cell(&Exponents(vec![a, b])) {
                Cell::Member => s.push_str(&format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#4a6fa5\" stroke=\"#dddddd\"/>\n",
                    x, y, cell, cell
                )),
                Cell::Unknown => s.push_str(&format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#c9c9c9\" stroke=\"#dddddd\"/>\n",
                    x, y, cell, cell
                )),
                Cell::Absent => s.push_str(&format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#eeeeee\"/>\n",
                    x, y, cell, cell
                )),
            }
        }
    }
    // axes through exponent 0
    if lo <= 0 && 0 <= hi {
        let x0 = pad + (0 - lo) * cell;
        let y0 = pad + hi * cell;
        s.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{pad}\" x2=\"{x}\" y2=\"{b}\" stroke=\"#333333\"/>\n",
            x = x0,
            pad = pad,
            b = height - pad
        ));
        s.push_str(&format!(
            "<line x1=\"{pad}\" y1=\"{y}\" x2=\"{r}\" y2=\"{y}\" stroke=\"#333333\"/>\n",
            pad = pad,
            y = y0,
            r = width - pad
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#333333\">a1: {}..{}</text>\n",
        pad,
        height - 6,
        lo,
        hi
    ));
    s.push_str("</svg>\n");
    Ok(s)
}
