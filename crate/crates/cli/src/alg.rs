use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use wordlen_core::algebra::{
    check_main_bound, liw_complexity_report, liw_table, main_bound_inputs, power_free_report,
    render_indices, AlgebraError, GeneratorSet, LengthTrace, SpanLadder, DEFAULT_WORD_BUDGET,
};
use wordlen_core::linalg::MatrixFile;

use crate::{print_json, resolve_budget, Failure, Outcome};

/// Longest words examined when estimating `m` for a proper subalgebra.
const M_ESTIMATE_WORD_LEN: usize = 4;

fn load(path: &Path) -> Result<GeneratorSet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(GeneratorSet::from_file(&MatrixFile::from_json(&text)?)?)
}

#[derive(Serialize)]
struct MainBoundOut {
    d: u64,
    m: u64,
    k_star: u64,
    value: String,
    floor: i64,
    holds: bool,
    conditional: bool,
}

#[derive(Serialize)]
struct LengthOut {
    p: u64,
    n: usize,
    generators: usize,
    dims: Vec<usize>,
    length: usize,
    generated_dim: usize,
    full_algebra: bool,
    main_bound: Option<MainBoundOut>,
    /// why the main bound was not evaluated
    main_bound_note: Option<String>,
}

fn main_bound(
    set: &GeneratorSet,
    trace: &LengthTrace,
    budget: u64,
) -> Result<(Option<MainBoundOut>, Option<String>), Failure> {
    let (d, m, conditional) = match main_bound_inputs(set, trace, M_ESTIMATE_WORD_LEN, budget) {
        Ok(x) => x,
        Err(e @ AlgebraError::SearchBudgetExceeded { .. }) => return Ok((None, Some(e.to_string()))),
        Err(e) => return Err(e.into()),
    };
    match check_main_bound(set, trace, d, m, conditional) {
        Ok(Some(c)) => Ok((
            Some(MainBoundOut {
                d,
                m,
                k_star: c.bound.k_star,
                value: format!("{}/{}", c.bound.value.numer(), c.bound.value.denom()),
                floor: c.bound.integer_value,
                holds: c.holds,
                conditional,
            }),
            None,
        )),
        Ok(None) => Ok((None, Some(format!("m = {m} < 2: bound does not apply")))),
        Err(e @ AlgebraError::FieldTooSmall { .. }) => Ok((None, Some(e.to_string()))),
        Err(e) => Err(e.into()),
    }
}

pub fn length(path: &Path, cap: Option<usize>, json: bool) -> Outcome {
    let set = load(path)?;
    let cap = cap.unwrap_or(set.n() * set.n());
    let trace = SpanLadder::build_capped(&set, cap)?.trace();
    let budget = resolve_budget(None, DEFAULT_WORD_BUDGET)?;
    let (bound, note) = main_bound(&set, &trace, budget)?;
    let out = LengthOut {
        p: set.field().modulus(),
        n: set.n(),
        generators: set.len(),
        full_algebra: trace.generated_dim == set.n() * set.n(),
        dims: trace.dims,
        length: trace.length,
        generated_dim: trace.generated_dim,
        main_bound: bound,
        main_bound_note: note,
    };
    // a conditional bound rests on an estimated m, so it cannot refute anything
    let ok = out
        .main_bound
        .as_ref()
        .is_none_or(|b| b.holds || b.conditional);
    if json {
        print_json(&out);
    } else {
        let mut s = String::new();
        writeln!(s, "field     GF({})", out.p).unwrap();
        writeln!(s, "size      {0}x{0}, {1} generators", out.n, out.generators).unwrap();
        let dims: Vec<String> = out.dims.iter().map(|d| d.to_string()).collect();
        writeln!(s, "dims      {}", dims.join(" ")).unwrap();
        writeln!(s, "l(S)      {}", out.length).unwrap();
        writeln!(
            s,
            "dim L(S)  {}{}",
            out.generated_dim,
            if out.full_algebra { " (full matrix algebra)" } else { "" }
        )
        .unwrap();
        match (&out.main_bound, &out.main_bound_note) {
            (Some(b), _) => writeln!(
                s,
                "bound     {} = {} at k = {} (d = {}, m = {}{}): {}",
                b.floor,
                b.value,
                b.k_star,
                b.d,
                b.m,
                if b.conditional { ", m estimated" } else { "" },
                if b.holds { "holds" } else { "VIOLATED" }
            )
            .unwrap(),
            (None, Some(note)) => writeln!(s, "bound     not evaluated: {note}").unwrap(),
            (None, None) => {}
        }
        print!("{s}");
    }
    Ok(ok)
}

#[derive(Serialize)]
struct LiwRow {
    i: usize,
    word: String,
    c: u64,
    c_ok: bool,
    max_exponent: Option<String>,
    power_free_ok: Option<bool>,
}

#[derive(Serialize)]
struct LiwOut {
    p: u64,
    n: usize,
    generators: usize,
    dims: Vec<usize>,
    length: usize,
    generated_dim: usize,
    m: u64,
    m_conditional: bool,
    liw: Vec<LiwRow>,
    complexity_ok: bool,
    /// null when the field is too small for the power check
    power_free_ok: Option<bool>,
}

pub fn liw(path: &Path, budget: Option<u64>, json: bool) -> Outcome {
    let set = load(path)?;
    let budget = resolve_budget(budget, DEFAULT_WORD_BUDGET)?;
    let ladder = SpanLadder::build(&set)?;
    let trace = ladder.trace();
    let table = liw_table(&set, &ladder, budget)?;
    let complexity = liw_complexity_report(&ladder, &table);
    let (_, m, m_conditional) = main_bound_inputs(&set, &trace, M_ESTIMATE_WORD_LEN, budget)?;
    let power = match power_free_report(&set, &table, m) {
        Ok(r) => Some(r),
        Err(AlgebraError::FieldTooSmall { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let rows = table
        .iter()
        .enumerate()
        .map(|(idx, r)| {
            let pf = power.as_ref().map(|p| &p.entries[idx]);
            LiwRow {
                i: r.i,
                word: render_indices(&r.word, set.len()),
                c: r.complexity_total,
                c_ok: complexity.entries[idx].ok,
                max_exponent: pf.map(|e| e.max_exponent.to_string()),
                power_free_ok: pf.map(|e| e.ok),
            }
        })
        .collect();
    let out = LiwOut {
        p: set.field().modulus(),
        n: set.n(),
        generators: set.len(),
        dims: trace.dims,
        length: trace.length,
        generated_dim: trace.generated_dim,
        m,
        m_conditional,
        liw: rows,
        complexity_ok: complexity.all_ok(),
        power_free_ok: power.as_ref().map(|p| p.all_ok()),
    };
    let ok = out.complexity_ok && (out.power_free_ok != Some(false) || out.m_conditional);
    if json {
        print_json(&out);
    } else {
        let mut s = String::new();
        let dims: Vec<String> = out.dims.iter().map(|d| d.to_string()).collect();
        writeln!(s, "dims      {}", dims.join(" ")).unwrap();
        writeln!(s, "l(S)      {}", out.length).unwrap();
        writeln!(
            s,
            "m         {}{}",
            out.m,
            if out.m_conditional { " (estimated)" } else { "" }
        )
        .unwrap();
        writeln!(
            s,
            "{:>4}  {:<16} {:>6} {:>5}  {:>8} {:>6}",
            "i", "LIW_i", "c", "c<=d", "max exp", "free"
        )
        .unwrap();
        for r in &out.liw {
            writeln!(
                s,
                "{:>4}  {:<16} {:>6} {:>5}  {:>8} {:>6}",
                r.i,
                r.word,
                r.c,
                r.c_ok,
                r.max_exponent.as_deref().unwrap_or("-"),
                r.power_free_ok.map_or("-".into(), |b| b.to_string())
            )
            .unwrap();
        }
        writeln!(s, "c(LIW_i) <= dim L(S)       {}", out.complexity_ok).unwrap();
        match out.power_free_ok {
            Some(b) => writeln!(s, "LIW_i avoid (m-1)+-powers  {b}").unwrap(),
            None => writeln!(s, "LIW_i avoid (m-1)+-powers  n/a (need p > m)").unwrap(),
        }
        print!("{s}");
    }
    Ok(ok)
}
