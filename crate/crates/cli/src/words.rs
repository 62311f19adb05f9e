use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use wordlen_core::powers::{avoids, max_factor_exponent, verify_tc, TcReport};
use wordlen_core::structure::{
    corollary_general_max_profile, corollary_max_profile, decompose_check, minimal_qpt,
    mh_equivalence, mh_general_equivalence,
};
use wordlen_core::word::{complexity_profile, parse_word, Alphabet, Word};

use crate::{print_json, Failure, Outcome, WordArgs};

struct Parsed {
    word: Word,
    alphabet: Alphabet,
    inferred: bool,
}

fn parse(args: &WordArgs) -> Result<Parsed, Failure> {
    let (alphabet, inferred) = match &args.alphabet {
        Some(spec) => (Alphabet::parse(spec)?, false),
        None => (Alphabet::infer(&args.word)?, true),
    };
    let word = parse_word(&args.word, &alphabet)?;
    if word.is_empty() {
        return Err(Failure::Usage("word must be non-empty".into()));
    }
    Ok(Parsed {
        word,
        alphabet,
        inferred,
    })
}

#[derive(Serialize)]
struct WordHeader {
    word: String,
    alphabet: Vec<String>,
    alphabet_inferred: bool,
    length: usize,
}

impl WordHeader {
    fn new(p: &Parsed) -> Self {
        WordHeader {
            word: p.alphabet.render(&p.word),
            alphabet: p.alphabet.symbols().to_vec(),
            alphabet_inferred: p.inferred,
            length: p.word.len(),
        }
    }

    fn table(&self, out: &mut String) {
        let how = if self.alphabet_inferred { "inferred" } else { "given" };
        writeln!(out, "word      {}", self.word).unwrap();
        writeln!(out, "alphabet  {} ({how})", self.alphabet.join(" ")).unwrap();
        writeln!(out, "length    {}", self.length).unwrap();
    }
}

#[derive(Serialize)]
struct ComplexityOut {
    #[serde(flatten)]
    header: WordHeader,
    counts: Vec<usize>,
    total: u64,
}

pub fn complexity(args: &WordArgs, json: bool) -> Outcome {
    let p = parse(args)?;
    let profile = complexity_profile(&p.word);
    let out = ComplexityOut {
        header: WordHeader::new(&p),
        counts: profile.counts,
        total: profile.total,
    };
    if json {
        print_json(&out);
    } else {
        let mut s = String::new();
        out.header.table(&mut s);
        writeln!(s, "{:>5}  {:>6}", "n", "f(n)").unwrap();
        for (n, c) in out.counts.iter().enumerate() {
            writeln!(s, "{n:>5}  {c:>6}").unwrap();
        }
        writeln!(s, "c(W)      {}", out.total).unwrap();
        print!("{s}");
    }
    Ok(true)
}

#[derive(Serialize)]
struct EquivalenceOut {
    n: usize,
    m: usize,
    f_n: usize,
    /// f(n) <= m
    lhs: bool,
    /// minimal cost <= m
    rhs: bool,
    holds: bool,
    /// max_i f(i) <= m, when f(n) <= m
    corollary: Option<bool>,
}

#[derive(Serialize)]
struct DecomposeOut {
    #[serde(flatten)]
    header: WordHeader,
    q: usize,
    p: usize,
    t: usize,
    cost: usize,
    exponent: String,
    check: bool,
    max_profile: usize,
    equivalence: Option<EquivalenceOut>,
}

pub fn decompose(args: &WordArgs, n: Option<usize>, m: Option<usize>, json: bool) -> Outcome {
    let parsed = parse(args)?;
    let w = &parsed.word;
    let dec = minimal_qpt(w)?;
    let profile = complexity_profile(w);
    let equivalence = match n {
        None => None,
        Some(n) => {
            let (eq, m) = match m {
                Some(m) => (mh_general_equivalence(w, n, m)?, m),
                None => (mh_equivalence(w, n)?, n),
            };
            let corollary = if eq.lhs {
                Some(match m == n {
                    true => corollary_max_profile(w, n)?,
                    false => corollary_general_max_profile(w, n, m)?,
                })
            } else {
                None
            };
            Some(EquivalenceOut {
                n,
                m,
                f_n: profile.counts[n],
                lhs: eq.lhs,
                rhs: eq.rhs,
                holds: eq.holds(),
                corollary,
            })
        }
    };
    let out = DecomposeOut {
        header: WordHeader::new(&parsed),
        q: dec.q,
        p: dec.p,
        t: dec.t,
        cost: dec.cost(),
        exponent: dec.exponent().to_string(),
        check: decompose_check(w, &dec)?,
        max_profile: profile.max_count(),
        equivalence,
    };
    let ok = out.check
        && out
            .equivalence
            .as_ref()
            .is_none_or(|e| e.holds && e.corollary != Some(false));
    if json {
        print_json(&out);
    } else {
        let mut s = String::new();
        out.header.table(&mut s);
        writeln!(s, "q p t     {} {} {}", out.q, out.p, out.t).unwrap();
        writeln!(s, "cost      {}", out.cost).unwrap();
        writeln!(s, "exponent  {}", out.exponent).unwrap();
        writeln!(s, "check     {}", out.check).unwrap();
        writeln!(s, "max f(i)  {}", out.max_profile).unwrap();
        if let Some(e) = &out.equivalence {
            writeln!(s, "f({})      {}", e.n, e.f_n).unwrap();
            writeln!(s, "f(n)<=m   {}   (m = {})", e.lhs, e.m).unwrap();
            writeln!(s, "cost<=m   {}", e.rhs).unwrap();
            writeln!(s, "agree     {}", e.holds).unwrap();
            if let Some(c) = e.corollary {
                writeln!(s, "max<=m    {c}").unwrap();
            }
        }
        print!("{s}");
    }
    Ok(ok)
}

#[derive(Serialize)]
struct AvoidOut {
    d: String,
    avoids_d: bool,
    avoids_d_plus: bool,
}

#[derive(Serialize)]
struct PowersOut {
    #[serde(flatten)]
    header: WordHeader,
    max_exponent: String,
    factor_len: u64,
    period: u64,
    witness: [usize; 2],
    witness_text: String,
    avoidance: Option<AvoidOut>,
    total_complexity: Option<TcReport>,
}

fn parse_ratio(text: &str) -> Result<Ratio<u64>, Failure> {
    let r: Ratio<u64> = text
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("cannot parse exponent {text:?}")))?;
    Ok(r)
}

pub fn powers(args: &WordArgs, d: Option<&str>, k: Option<usize>, json: bool) -> Outcome {
    let parsed = parse(args)?;
    let w = &parsed.word;
    let max = max_factor_exponent(w)?;
    let avoidance = match d {
        None => None,
        Some(text) => {
            let d = parse_ratio(text)?;
            Some(AvoidOut {
                d: format!("{}/{}", d.numer(), d.denom()),
                avoids_d: avoids(w, d, false)?,
                avoids_d_plus: avoids(w, d, true)?,
            })
        }
    };
    let total_complexity = k.map(|k| verify_tc(w, k)).transpose()?;
    let witness_word = Word::from(&w[max.witness.clone()]);
    let out = PowersOut {
        header: WordHeader::new(&parsed),
        max_exponent: max.exponent.to_string(),
        factor_len: max.exponent.num,
        period: max.exponent.den,
        witness: [max.witness.start, max.witness.end],
        witness_text: parsed.alphabet.render(&witness_word),
        avoidance,
        total_complexity,
    };
    let ok = out.total_complexity.as_ref().is_none_or(TcReport::all_ok);
    if json {
        print_json(&out);
    } else {
        let mut s = String::new();
        out.header.table(&mut s);
        writeln!(s, "max exponent  {}", out.max_exponent).unwrap();
        writeln!(
            s,
            "witness       [{}, {})  {}  (length {}, period {})",
            out.witness[0], out.witness[1], out.witness_text, out.factor_len, out.period
        )
        .unwrap();
        if let Some(a) = &out.avoidance {
            writeln!(s, "avoids {}-powers   {}", a.d, a.avoids_d).unwrap();
            writeln!(s, "avoids {}+-powers  {}", a.d, a.avoids_d_plus).unwrap();
        }
        if let Some(r) = &out.total_complexity {
            let flag = |f: Option<bool>| f.map_or("n/a".to_string(), |b| b.to_string());
            writeln!(s, "k             {}", r.k).unwrap();
            writeln!(s, "c(W)          {}", r.c).unwrap();
            writeln!(s, "(k+1)(l-k+1)  {}", r.bound).unwrap();
            writeln!(s, "bound holds   {}", r.theorem_ok).unwrap();
            writeln!(
                s,
                "lemmas        {} {} {}",
                flag(r.lemma1_ok),
                flag(r.lemma2_ok),
                flag(r.lemma3_ok)
            )
            .unwrap();
        }
        print!("{s}");
    }
    Ok(ok)
}
