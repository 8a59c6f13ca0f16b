//! Strand diagrams. Time flows left to right; strand 1 is the top row.
//!
//! Each unit of an exponent is one crossing. For a positive unit of `s_i` the strand
//! coming down from row `i` passes over the one going up from row `i + 1`; negative units
//! swap the roles. ASCII marks the over-strand with `\` or `/` in the middle of the X.
//! SVG draws the under-strand with a gap and colours strands by their starting position.

use std::fmt::Write;

use fibbraid::braid::BraidWord;

fn units(word: &BraidWord) -> Vec<(usize, bool)> {
    word.crossings.iter().flat_map(|c| std::iter::repeat_n((c.index, c.exponent > 0), c.exponent.unsigned_abs() as usize)).collect()
}

pub fn ascii(word: &BraidWord) -> String {
    let n = word.n_strands;
    let rows = 2 * n - 1;
    let mut grid: Vec<String> = (0..rows).map(|r| if r % 2 == 0 { format!("{:>2} -", r / 2 + 1) } else { "    ".into() }).collect();
    for (i, positive) in units(word) {
        let top = 2 * (i - 1);
        for (r, line) in grid.iter_mut().enumerate() {
            let cell = if r == top {
                "\\ /-"
            } else if r == top + 1 {
                if positive {
                    " \\  "
                } else {
                    " /  "
                }
            } else if r == top + 2 {
                "/ \\-"
            } else if r % 2 == 0 {
                "----"
            } else {
                "    "
            };
            line.push_str(cell);
        }
    }
    let mut out = String::new();
    for line in grid {
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

const COLOURS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];
const STEP: f64 = 40.0;
const GAP: f64 = 30.0;
const MARGIN: f64 = 20.0;

pub fn svg(word: &BraidWord) -> String {
    let n = word.n_strands;
    let cols = units(word);
    let width = 2.0 * MARGIN + STEP * (cols.len().max(1) as f64);
    let height = 2.0 * MARGIN + GAP * (n as f64 - 1.0);
    let y = |row: usize| MARGIN + GAP * (row as f64 - 1.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    // which original strand is on each row
    let mut at: Vec<usize> = (0..n).collect();
    for (k, &(i, positive)) in cols.iter().enumerate() {
        let x0 = MARGIN + STEP * k as f64;
        let x1 = x0 + STEP;
        let xm = (x0 + x1) / 2.0;
        for row in 1..=n {
            if row != i && row != i + 1 {
                let _ = writeln!(
                    out,
                    r#"<line x1="{x0}" y1="{0}" x2="{x1}" y2="{0}" stroke="{1}" stroke-width="3"/>"#,
                    y(row),
                    COLOURS[at[row - 1] % COLOURS.len()]
                );
            }
        }
        let down = format!("M {x0} {} C {xm} {}, {xm} {}, {x1} {}", y(i), y(i), y(i + 1), y(i + 1));
        let up = format!("M {x0} {} C {xm} {}, {xm} {}, {x1} {}", y(i + 1), y(i + 1), y(i), y(i));
        let (down_c, up_c) = (COLOURS[at[i - 1] % COLOURS.len()], COLOURS[at[i] % COLOURS.len()]);
        let (under, under_c, over, over_c) = if positive { (up, up_c, down, down_c) } else { (down, down_c, up, up_c) };
        let _ = writeln!(out, r#"<path d="{under}" fill="none" stroke="{under_c}" stroke-width="3"/>"#);
        let _ = writeln!(out, r#"<path d="{over}" fill="none" stroke="white" stroke-width="9"/>"#);
        let _ = writeln!(out, r#"<path d="{over}" fill="none" stroke="{over_c}" stroke-width="3"/>"#);
        at.swap(i - 1, i);
    }
    if cols.is_empty() {
        for row in 1..=n {
            let _ = writeln!(
                out,
                r#"<line x1="{MARGIN}" y1="{0}" x2="{1}" y2="{0}" stroke="{2}" stroke-width="3"/>"#,
                y(row),
                width - MARGIN,
                COLOURS[(row - 1) % COLOURS.len()]
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
