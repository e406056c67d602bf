use lzdmw_core::{GSym, Grammar, Symbol, Text};

use crate::{check_k, Family, GenError};

const A: Symbol = 0;
const B: Symbol = 1;
const C: Symbol = 2;
const D: Symbol = 3;

fn push_run(out: &mut Vec<Symbol>, c: Symbol, len: usize) {
    out.extend(std::iter::repeat_n(c, len));
}

/// δ_i = a^i bb a^{k-i}
fn delta(out: &mut Vec<Symbol>, i: usize, k: usize) {
    push_run(out, A, i);
    out.extend([B, B]);
    push_run(out, A, k - i);
}

/// x = δ_k δ_{k-1} δ_k δ_{k-2} ⋯ δ_k δ_{k/2+1} δ_k a^{k-1}
fn x_block(k: usize) -> Vec<Symbol> {
    let mut x = Vec::new();
    for i in (k / 2 + 1..k).rev() {
        delta(&mut x, k, k);
        delta(&mut x, i, k);
    }
    delta(&mut x, k, k);
    push_run(&mut x, A, k - 1);
    x
}

fn text(symbols: Vec<Symbol>) -> Text {
    Text::new(symbols, 4).expect("letters are below 4")
}

pub fn gen_lzmw_approx(k: usize) -> Result<Text, GenError> {
    check_k(Family::LzmwApprox, k)?;
    let mut s = Vec::new();
    for i in 0..k {
        // γ_i = b a^i · a · a^i b · c · ba ba² ⋯ ba^i
        s.push(B);
        push_run(&mut s, A, 2 * i + 1);
        s.extend([B, C]);
        for j in 1..=i {
            s.push(B);
            push_run(&mut s, A, j);
        }
    }
    for i in 0..=k {
        delta(&mut s, i, k);
        s.push(D);
    }
    let mut e = 1;
    while e <= k / 2 {
        s.push(C);
        push_run(&mut s, A, 3 * e - 1);
        e *= 2;
    }
    s.extend([D, C]);
    let x = x_block(k);
    for _ in 0..k / 2 {
        s.extend_from_slice(&x);
    }
    Ok(text(s))
}

pub fn gen_lzd_approx(k: usize) -> Result<Text, GenError> {
    check_k(Family::LzdApprox, k)?;
    let mut s = Vec::new();
    for i in 2..=k {
        push_run(&mut s, A, i);
        push_run(&mut s, C, i);
    }
    for i in 1..k {
        s.extend([B, B]);
        push_run(&mut s, A, i);
    }
    s.extend([B, B]);
    for i in 0..=k {
        delta(&mut s, i, k);
        push_run(&mut s, D, i + 2);
    }
    let x = x_block(k);
    for _ in 0..k / 2 {
        s.extend_from_slice(&x);
    }
    Ok(text(s))
}

/// Rules `X_0 → ε`, `X_i → X_{i-1} c` for `i ∈ [1..top]`; returns their ids.
fn power_rules(g: &mut Grammar, name: &str, c: Symbol, top: usize) -> Vec<usize> {
    let mut ids = vec![g.add_named_rule(format!("{name}0"), vec![])];
    for i in 1..=top {
        let prev = ids[i - 1];
        ids.push(g.add_named_rule(format!("{name}{i}"), vec![GSym::N(prev), GSym::T(c)]));
    }
    ids
}

/// Δ_i → A_i bb A_{k-i} for i ∈ [0..k], then
/// X → Δ_k Δ_{k-1} Δ_k Δ_{k-2} ⋯ Δ_k Δ_{k/2+1} Δ_k A_{k-1}.
fn delta_and_x_rules(g: &mut Grammar, a: &[usize], k: usize) -> (Vec<usize>, usize) {
    let deltas: Vec<usize> = (0..=k)
        .map(|i| {
            g.add_named_rule(
                format!("Delta{i}"),
                vec![GSym::N(a[i]), GSym::T(B), GSym::T(B), GSym::N(a[k - i])],
            )
        })
        .collect();
    let mut x = Vec::new();
    for i in (k / 2 + 1..k).rev() {
        x.extend([GSym::N(deltas[k]), GSym::N(deltas[i])]);
    }
    x.extend([GSym::N(deltas[k]), GSym::N(a[k - 1])]);
    let x = g.add_named_rule("X", x);
    (deltas, x)
}

/// The O(k)-size grammar for [`gen_lzmw_approx`], rules kept as written
/// (sequence right-hand sides, `A_0 → ε`).
pub fn small_grammar_lzmw(k: usize) -> Result<Grammar, GenError> {
    check_k(Family::LzmwApprox, k)?;
    let mut g = Grammar::new();
    let a = power_rules(&mut g, "A", A, 2 * k);
    let mut bs = vec![g.add_named_rule("B0", vec![GSym::T(C)])];
    for i in 1..=2 * k {
        let rhs = vec![GSym::N(bs[i - 1]), GSym::T(B), GSym::N(a[i])];
        bs.push(g.add_named_rule(format!("B{i}"), rhs));
    }
    let gammas: Vec<usize> = (0..k)
        .map(|i| {
            g.add_named_rule(
                format!("Gamma{i}"),
                vec![
                    GSym::T(B),
                    GSym::N(a[2 * i + 1]),
                    GSym::T(B),
                    GSym::N(bs[i]),
                ],
            )
        })
        .collect();
    let (deltas, x) = delta_and_x_rules(&mut g, &a, k);

    let mut start: Vec<GSym> = gammas.iter().map(|&r| GSym::N(r)).collect();
    for &d in &deltas {
        start.extend([GSym::N(d), GSym::T(D)]);
    }
    let mut e = 1;
    while e <= k / 2 {
        start.extend([GSym::T(C), GSym::N(a[3 * e - 1])]);
        e *= 2;
    }
    start.extend([GSym::T(D), GSym::T(C)]);
    start.extend(std::iter::repeat_n(GSym::N(x), k / 2));
    let s = g.add_named_rule("S", start);
    g.set_start(s);
    Ok(g)
}

/// The O(k)-size grammar for [`gen_lzd_approx`].
pub fn small_grammar_lzd(k: usize) -> Result<Grammar, GenError> {
    check_k(Family::LzdApprox, k)?;
    let mut g = Grammar::new();
    let a = power_rules(&mut g, "A", A, k + 2);
    let c = power_rules(&mut g, "C", C, k + 2);
    let d = power_rules(&mut g, "D", D, k + 2);
    let (deltas, x) = delta_and_x_rules(&mut g, &a, k);

    let mut start = Vec::new();
    for i in 2..=k {
        start.extend([GSym::N(a[i]), GSym::N(c[i])]);
    }
    for i in 1..k {
        start.extend([GSym::T(B), GSym::T(B), GSym::N(a[i])]);
    }
    start.extend([GSym::T(B), GSym::T(B)]);
    for i in 0..=k {
        start.extend([GSym::N(deltas[i]), GSym::N(d[i + 2])]);
    }
    start.extend(std::iter::repeat_n(GSym::N(x), k / 2));
    let s = g.add_named_rule("S", start);
    g.set_start(s);
    Ok(g)
}
