//! Line-oriented text format for automata.
//!
//! ```text
//! semiring qplus
//! alphabet a b
//! states 2
//! output 1/2 1/2
//! trans a
//! 0 1/2
//! 1/2 0
//! trans b
//! 1 0
//! 0 1
//! state 1 0
//! ```
//!
//! Row `i` of a `trans` block holds the coefficients of the successor of
//! `e_i`, so the block is the transpose of `M_a`. `#` starts a comment.

use num_traits::One;

use super::{SemiringTag, WeightedAutomaton};
use crate::error::Result;
use crate::linalg::{fmt_rvec, sum, RMat, RVec, Rat};
use crate::text::{content_lines, err, expect_keyword, parse_count, rational_row};

fn check_scalars(tag: SemiringTag, line: usize, v: &[Rat]) -> Result<()> {
    let ok = |x: &Rat| {
        use num_traits::Signed;
        (!tag.integral() || x.is_integer()) && (!tag.nonnegative() || !x.is_negative())
    };
    match v.iter().find(|x| !ok(x)) {
        Some(x) => Err(err(line, format!("value {x} is not allowed in semiring {tag}"))),
        None => Ok(()),
    }
}

/// Parses an automaton and its optional distinguished state.
pub fn parse_automaton(text: &str) -> Result<(WeightedAutomaton, Option<RVec>)> {
    let lines = content_lines(text);
    let (line, toks) = expect_keyword(&lines, 0, "semiring")?;
    let tag: SemiringTag = match toks {
        [t] => t.parse().map_err(|m: String| err(line, m))?,
        _ => return Err(err(line, "expected a single semiring name")),
    };

    let (line, toks) = expect_keyword(&lines, 1, "alphabet")?;
    let alphabet: Vec<String> = toks.iter().map(|s| s.to_string()).collect();
    for (i, s) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(s) {
            return Err(err(line, format!("duplicate symbol '{s}'")));
        }
    }

    let (line, toks) = expect_keyword(&lines, 2, "states")?;
    let n = parse_count(line, toks, "state count")?;

    let (out_line, toks) = expect_keyword(&lines, 3, "output")?;
    let out = rational_row(out_line, toks, n)?;
    check_scalars(tag, out_line, &out)?;
    if let Some((j, o)) = out.iter().enumerate().find(|(_, o)| !tag.contains_scalar(o)) {
        return Err(err(out_line, format!("output {j} = {o} is not allowed in semiring {tag}")));
    }

    let mut trans: Vec<Option<RMat>> = vec![None; alphabet.len()];
    let mut pos = 4;
    let mut state = None;
    while pos < lines.len() {
        let (line, toks) = (&lines[pos].0, &lines[pos].1);
        let line = *line;
        match toks[0] {
            "trans" => {
                let [sym] = &toks[1..] else {
                    return Err(err(line, "expected 'trans <symbol>'"));
                };
                let idx = alphabet
                    .iter()
                    .position(|s| s == sym)
                    .ok_or_else(|| err(line, format!("unknown symbol '{sym}'")))?;
                if trans[idx].is_some() {
                    return Err(err(line, format!("duplicate transition block for '{sym}'")));
                }
                if state.is_some() {
                    return Err(err(line, "'trans' after 'state'"));
                }
                let mut rows = Vec::with_capacity(n);
                for r in 0..n {
                    let Some((rl, rt)) = lines.get(pos + 1 + r) else {
                        return Err(err(line, format!("transition block for '{sym}' has {r} rows, expected {n}")));
                    };
                    let row = rational_row(*rl, rt, n)?;
                    check_scalars(tag, *rl, &row)?;
                    rows.push(row);
                }
                if tag == SemiringTag::Unit {
                    if let Some(i) = (0..n).find(|&i| sum(&rows[i]) > Rat::one()) {
                        return Err(err(lines[pos + 1 + i].0, format!("row {i} of '{sym}' sums to more than 1")));
                    }
                }
                let m = RMat::from_cols(&rows, n);
                trans[idx] = Some(m);
                pos += n + 1;
            }
            "state" => {
                if state.is_some() {
                    return Err(err(line, "duplicate 'state' line"));
                }
                state = Some(rational_row(line, &toks[1..], n)?);
                pos += 1;
            }
            other => return Err(err(line, format!("unexpected '{other}'"))),
        }
    }
    let last = lines.last().map_or(0, |l| l.0);
    let trans: Vec<RMat> = trans
        .into_iter()
        .zip(&alphabet)
        .map(|(m, s)| m.ok_or_else(|| err(last, format!("missing transition block for '{s}'"))))
        .collect::<Result<_>>()?;
    let aut = WeightedAutomaton::new(tag, alphabet, out, trans).map_err(|e| err(out_line, e.to_string()))?;
    Ok((aut, state))
}

/// Renders an automaton in the format read by [`parse_automaton`].
pub fn write_automaton(aut: &WeightedAutomaton, state: Option<&[Rat]>) -> String {
    let mut s = format!(
        "semiring {}\nalphabet {}\nstates {}\noutput {}\n",
        aut.tag(),
        aut.alphabet().join(" "),
        aut.n(),
        fmt_rvec(aut.out())
    );
    for (a, m) in aut.alphabet().iter().zip(aut.matrices()) {
        s.push_str(&format!("trans {a}\n"));
        for c in m.col_vecs() {
            s.push_str(&fmt_rvec(&c));
            s.push('\n');
        }
    }
    if let Some(x) = state {
        s.push_str(&format!("state {}\n", fmt_rvec(x)));
    }
    s
}
