use std::fmt::Write as _;
use std::io::Read;

use nilforge::free_lie::{word_text, AlgebraJson};
use nilforge::lab::{delta_series, DECAY_CSV_HEADER, LIOUVILLE_CSV_HEADER};
use nilforge::rep::{decompose_capped, StandardTableau};
use nilforge::scalar::format_rational;
use nilforge::*;
use serde_json::{json, Value};

use crate::parse::{self, Number};
use crate::Output;
use crate::{
    BchArgs, DecomposeArgs, DeltaArgs, FitArgs, HwvArgs, KostkaArgs, KsArgs, KwArgs, LiouvilleArgs, Preset,
    QuotientArgs, RemezArgs, TauArgs, WordEvalArgs, WordLogArgs,
};

fn header_of(csv_header: &str) -> Vec<&str> {
    csv_header.split(',').collect()
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn element_json(e: &LieElement) -> Value {
    json!({
        "k": e.k(),
        "s": e.s(),
        "terms": e.to_records(),
        "compact": e.to_compact(),
    })
}

fn element_rows(e: &LieElement) -> Vec<Vec<String>> {
    e.terms()
        .into_iter()
        .map(|(b, c)| vec![word_text(b.word.letters()), b.bracketing.clone(), b.degree().to_string(), format_rational(&c)])
        .collect()
}

fn element_output(e: &LieElement) -> Output {
    Output::new(element_json(e), &["word", "bracketing", "degree", "coeff"], element_rows(e), e.to_pretty())
}

pub fn witt_dim(a: &KsArgs) -> Result<Output> {
    let d = witt_dimension(a.k, a.s)?;
    Ok(Output::scalar(
        json!({"k": a.k, "s": a.s, "dimension": d}),
        &["k", "s", "dimension"],
        vec![a.k.to_string(), a.s.to_string(), d.to_string()],
        d.to_string(),
    ))
}

pub fn basis(a: &KsArgs, degree: Option<usize>) -> Result<Output> {
    let layers = lyndon_basis(a.k, a.s)?;
    if let Some(d) = degree {
        if d == 0 || d > a.s {
            return Err(usage(format!("degree {d} is outside 1..={}", a.s)));
        }
    }
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut text = String::new();
    let mut index = 0usize;
    for (i, layer) in layers.iter().enumerate() {
        for b in layer {
            index += 1;
            if degree.is_some_and(|d| d != i + 1) {
                continue;
            }
            let word = word_text(b.word.letters());
            rows.push(vec![
                index.to_string(),
                b.degree().to_string(),
                word.clone(),
                b.bracketing.clone(),
                b.multidegree.to_string(),
            ]);
            items.push(json!({
                "index": index,
                "degree": b.degree(),
                "word": word,
                "bracketing": b.bracketing,
                "multidegree": b.multidegree,
            }));
            let _ = writeln!(text, "{index:>5}  {word:<10} {}", b.bracketing);
        }
    }
    Ok(Output::new(
        json!({"k": a.k, "s": a.s, "basis": items}),
        &["index", "degree", "word", "bracketing", "multidegree"],
        rows,
        text,
    ))
}

pub fn bch(a: &BchArgs) -> Result<Output> {
    let (k, s) = (a.ks.k, a.ks.s);
    let x = LieElement::parse_compact(k, s, &a.x)?;
    if a.inverse {
        return Ok(element_output(&bch_inverse(&x)));
    }
    let y = LieElement::parse_compact(k, s, a.y.as_deref().ok_or_else(|| usage("--y is required"))?)?;
    let r = if a.bracket { bracket(&x, &y)? } else { bch_product(&x, &y)? };
    Ok(element_output(&r))
}

pub fn word_eval(a: &WordEvalArgs) -> Result<Output> {
    if let Some(n) = a.ball {
        let mut rows = Vec::new();
        let mut words = Vec::new();
        let mut text = String::new();
        for w in word_ball(a.k, n) {
            let t = w.to_string();
            rows.push(vec![w.length().to_string(), t.clone()]);
            let _ = writeln!(text, "{t}");
            words.push(t);
        }
        return Ok(Output::new(json!({"k": a.k, "n": n, "words": words}), &["length", "word"], rows, text));
    }
    let s = a.s.ok_or_else(|| usage("--s is required to evaluate a word"))?;
    let w = FreeGroupWord::parse(a.word.as_deref().ok_or_else(|| usage("give --word or --ball"))?)?;
    let args = match &a.values {
        Some(t) => parse::elements(a.k, s, t)?,
        None => LieElement::generators(a.k, s)?,
    };
    Ok(element_output(&eval_word(&w, &args)?))
}

pub fn word_log(a: &WordLogArgs) -> Result<Output> {
    if let Some(text) = &a.element {
        let r = LieElement::parse_compact(a.k, a.s, text)?;
        let w = lie_to_word(&r)?;
        let t = w.to_string();
        return Ok(Output::scalar(
            json!({"word": t, "length": w.length(), "syllables": w.syllables().len()}),
            &["length", "word"],
            vec![w.length().to_string(), t.clone()],
            t,
        ));
    }
    let w = FreeGroupWord::parse(a.word.as_deref().ok_or_else(|| usage("give --word or --element"))?)?;
    let mut r = word_to_lie(&w, a.k, a.s)?;
    if let Some(wt) = &a.weight {
        r = weight_component(&r, &parse::weight(wt)?);
    }
    let norm = quasi_norm(&r);
    let mut out = element_output(&r);
    out.json["quasi_norm"] = json!(norm);
    out.text = format!("{}\n|r| = {norm:.6}", out.text);
    Ok(out)
}

pub fn decompose(a: &DecomposeArgs) -> Result<Output> {
    if let Some(shape) = &a.shape {
        let p = parse::partition(shape)?;
        let d = weyl_dim(&p, a.k);
        return Ok(Output::scalar(
            json!({"shape": p, "k": a.k, "dimension": d}),
            &["shape", "k", "dimension"],
            vec![p.to_string(), a.k.to_string(), d.to_string()],
            d.to_string(),
        ));
    }
    let s = a.s.ok_or_else(|| usage("give --s or --shape"))?;
    let dec = decompose_capped(a.k, s, parse::max_s()?)?;
    let rows = dec
        .multiplicities
        .iter()
        .map(|(p, m)| vec![p.to_string(), m.to_string(), weyl_dim(p, a.k).to_string()])
        .collect();
    Ok(Output::new(dec.to_json(), &["partition", "multiplicity", "dimension"], rows, dec.to_string()))
}

/// Modules of the weight-space table: partitions of `s` except the single
/// row, which never occurs for `s ≥ 2`.
fn table_shapes(s: usize) -> Vec<Partition> {
    let mut shapes = Partition::all(s);
    if s >= 2 {
        shapes.retain(|p| p.rows() > 1);
    }
    shapes
}

fn label(p: &Partition) -> String {
    let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn kostka_table(a: &KostkaArgs) -> Result<Output> {
    match (&a.shape, &a.weight) {
        (Some(shape), Some(wt)) => {
            let (p, w) = (parse::partition(shape)?, parse::weight(wt)?);
            let v = kostka(&p, &w);
            return Ok(Output::scalar(
                json!({"shape": p, "weight": w, "kostka": v}),
                &["shape", "weight", "kostka"],
                vec![label(&p), w.to_string(), v.to_string()],
                v.to_string(),
            ));
        }
        (None, Some(wt)) => {
            let w = parse::weight(wt)?;
            let v = weight_multiplicity(&w);
            return Ok(Output::scalar(
                json!({"weight": w, "multiplicity": v}),
                &["weight", "multiplicity"],
                vec![w.to_string(), v.to_string()],
                v.to_string(),
            ));
        }
        (Some(_), None) => return Err(usage("--shape needs --weight")),
        (None, None) => {}
    }
    let s = a.s.ok_or_else(|| usage("give --s, or --weight"))?;
    if s == 0 {
        return Err(usage("s must be positive"));
    }
    parse::check_cap(s)?;
    let shapes = table_shapes(s);
    let labels: Vec<String> = shapes.iter().map(label).collect();
    let mut header = vec!["weight".to_string()];
    header.extend(labels.iter().cloned());
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut text = format!("{:<14}{}\n", "weight", labels.iter().map(|l| format!("{l:>14}")).collect::<String>());
    for w in &shapes {
        let weight = w.as_weight(w.rows()).expect("rows fit");
        let values: Vec<u64> = shapes.iter().map(|m| kostka(m, &weight)).collect();
        let mut row = vec![label(w)];
        row.extend(values.iter().map(|v| v.to_string()));
        let _ = writeln!(
            text,
            "{:<14}{}",
            label(w),
            values.iter().map(|v| format!("{v:>14}")).collect::<String>()
        );
        rows.push(row);
        json_rows.push(json!({"weight": w, "values": values}));
    }
    Ok(Output { json: json!({"s": s, "modules": shapes, "rows": json_rows}), header, rows, text })
}

pub fn kw(a: &KwArgs) -> Result<Output> {
    if let Some(t) = &a.tableau {
        let t = StandardTableau::parse(t)?;
        let maj = major_index(&t);
        let rows: Vec<String> = t
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        return Ok(Output::scalar(
            json!({"shape": t.shape(), "rows": t.rows(), "descents": t.descents(), "major_index": maj}),
            &["tableau", "major_index"],
            vec![rows.join(";"), maj.to_string()],
            maj.to_string(),
        ));
    }
    let p = parse::partition(a.shape.as_deref().ok_or_else(|| usage("give --shape or --tableau"))?)?;
    let m = kw_multiplicity(&p, a.i)?;
    Ok(Output::scalar(
        json!({"shape": p, "i": a.i, "multiplicity": m}),
        &["shape", "i", "multiplicity"],
        vec![label(&p), a.i.to_string(), m.to_string()],
        m.to_string(),
    ))
}

pub fn klyachko(shape: &str, k: Option<usize>) -> Result<Output> {
    let p = parse::partition(shape)?;
    let k = k.unwrap_or(p.size());
    let occurs = klyachko_occurs(&p, k);
    Ok(Output::scalar(
        json!({"shape": p, "k": k, "occurs": occurs}),
        &["shape", "k", "occurs"],
        vec![label(&p), k.to_string(), occurs.to_string()],
        occurs.to_string(),
    ))
}

pub fn mult_free(a: &KsArgs) -> Result<Output> {
    let cap = parse::max_s()?;
    let free = if a.s <= nilforge::rep::DEFAULT_MAX_S {
        is_multiplicity_free(a.k, a.s)?
    } else {
        decompose_capped(a.k, a.s, cap)?.is_multiplicity_free()
    };
    Ok(Output::scalar(
        json!({"k": a.k, "s": a.s, "multiplicity_free": free}),
        &["k", "s", "multiplicity_free"],
        vec![a.k.to_string(), a.s.to_string(), free.to_string()],
        free.to_string(),
    ))
}

pub fn hwv(a: &HwvArgs) -> Result<Output> {
    let (k, s) = (a.ks.k, a.ks.s);
    if let Some(action) = &a.action {
        let ij = parse::usize_list(action)?;
        let [i, j] = ij[..] else {
            return Err(Error::Parse(format!("--action expects i,j, got {action:?}")));
        };
        let e = LieElement::parse_compact(k, s, a.element.as_deref().unwrap_or_default())?;
        return Ok(element_output(&glk_action(i, j, &e)?));
    }
    let p = parse::partition(a.shape.as_deref().ok_or_else(|| usage("give --shape or --action"))?)?;
    parse::check_cap(s)?;
    let vs = highest_weight_vectors(k, s, &p)?;
    let mut rows = Vec::new();
    let mut text = format!("{} highest-weight vector(s) of weight {p}\n", vs.len());
    for (n, v) in vs.iter().enumerate() {
        for mut r in element_rows(v) {
            r.insert(0, (n + 1).to_string());
            rows.push(r);
        }
        let _ = writeln!(text, "v{} = {}", n + 1, v.to_pretty());
    }
    Ok(Output::new(
        json!({"k": k, "s": s, "shape": p, "count": vs.len(), "vectors": vs.iter().map(element_json).collect::<Vec<_>>()}),
        &["vector", "word", "bracketing", "degree", "coeff"],
        rows,
        text,
    ))
}

pub fn metabelian_dims(a: &KsArgs) -> Result<Output> {
    let (quot, rest) = metabelian_layer_dims(a.k, a.s)?;
    Ok(Output::scalar(
        json!({"k": a.k, "s": a.s, "quotient": quot, "metabelian": rest, "total": quot + rest}),
        &["k", "s", "quotient", "metabelian", "total"],
        vec![a.k.to_string(), a.s.to_string(), quot.to_string(), rest.to_string(), (quot + rest).to_string()],
        format!("{quot} + {rest} = {}", quot + rest),
    ))
}

fn algebra_output(json_alg: &AlgebraJson, text: String) -> Output {
    let rows = json_alg
        .structure_constants
        .iter()
        .map(|c| vec![c.i.to_string(), c.j.to_string(), c.k.to_string(), c.c.clone()])
        .collect();
    Output::new(serde_json::to_value(json_alg).expect("serialisable"), &["i", "j", "k", "c"], rows, text)
}

pub fn quotient(a: &QuotientArgs) -> Result<Output> {
    let rels = parse::elements(a.ks.k, a.ks.s, &a.relations)?;
    let q = central_quotient(a.ks.k, a.ks.s, &rels)?;
    let j = q.algebra.to_json();
    let text = format!(
        "dimension {}, step {}, grading {:?}, {} structure constants",
        j.dimension,
        j.step,
        j.grading,
        j.structure_constants.len()
    );
    Ok(algebra_output(&j, text))
}

pub fn liouville_demo(a: &LiouvilleArgs) -> Result<Output> {
    let shape = parse::partition(&a.shape)?;
    let setup = liouville_submodule(a.k, a.s, &shape, a.truncation)?;
    let ms = match &a.m {
        Some(t) => parse::usize_list(t)?,
        None => (1..a.truncation).collect(),
    };
    let quot = if a.evaluate { Some(liouville_quotient(&setup)?) } else { None };
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut text = format!(
        "module {} of dimension {} twisted by lambda = {}\n",
        label(&shape),
        setup.basis.len() / 2,
        format_rational(&setup.lambda)
    );
    for m in ms {
        let w = liouville_decay(&setup, m)?;
        rows.push(header_of(&w.to_csv_row()).into_iter().map(String::from).collect());
        let mut item = serde_json::to_value(&w).expect("serialisable");
        let _ = write!(
            text,
            "m={m}  q={}  p={}  |r|<={}  log10 d={:.6}",
            w.q,
            w.p,
            w.word_length_bound,
            w.log10_distance()
        );
        if let Some(q) = &quot {
            let word = lie_to_word(&w.r)?;
            let gens: Vec<Vec<Rational>> =
                LieElement::generators(a.k, a.s)?.iter().map(|g| q.project(g)).collect::<Result<_>>()?;
            let v = q.algebra.eval_word(&word, &gens)?;
            let norm = v.iter().map(|x| x.abs()).max().unwrap_or_else(|| Rational::from_integer(0.into()));
            item["word_length"] = json!(word.length());
            item["quotient_distance"] = json!(format_rational(&norm));
            item["quotient_log10_distance"] = json!(nilforge::scalar::log10_rational(&norm));
            let _ = write!(text, "  word length {}  log10 |w| = {:.6}", word.length(), nilforge::scalar::log10_rational(&norm));
        }
        text.push('\n');
        items.push(item);
    }
    Ok(Output::new(
        json!({
            "k": a.k,
            "s": a.s,
            "shape": shape,
            "truncation": a.truncation,
            "lambda": format_rational(&setup.lambda),
            "module_dimension": setup.basis.len() / 2,
            "witnesses": items,
        }),
        &header_of(LIOUVILLE_CSV_HEADER),
        rows,
        text,
    ))
}

fn read_text(path: &std::path::Path) -> Result<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidParameter(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

/// Builds the tuple; irrational coordinates switch to fixed-point mode.
fn tuple_from(group: NilpotentAlgebra<Rational>, json: Option<&AlgebraJson>, pts: Vec<Vec<Number>>, digits: u32) -> Result<TupleSpec> {
    if pts.iter().flatten().all(|x| x.exact().is_some()) {
        let pts = pts.into_iter().map(|r| r.into_iter().map(|x| x.exact().cloned().unwrap()).collect()).collect();
        return TupleSpec::exact(group, pts);
    }
    if digits < 30 {
        return Err(usage(format!("--digits must be at least 30 for irrational tuples, got {digits}")));
    }
    let g = match json {
        Some(j) => NilpotentAlgebra::from_json_real(j, digits)?,
        None => group.map_scalars(|c| Real::from_rational(c, digits)),
    };
    let pts = pts
        .iter()
        .map(|r| r.iter().map(|x| x.to_real(digits)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    TupleSpec::real(g, pts, digits)
}

fn delta_tuple(a: &DeltaArgs) -> Result<TupleSpec> {
    match a.preset {
        Preset::Free => {
            let (k, s) = (a.k.ok_or_else(|| usage("--k is required"))?, a.s.ok_or_else(|| usage("--s is required"))?);
            TupleSpec::free_standard(k, s)
        }
        Preset::Abelian => {
            let vals = a.values.as_deref().ok_or_else(|| usage("--values is required"))?;
            let pts: Vec<Vec<Number>> = vals.split(',').map(|v| Number::parse(v).map(|n| vec![n])).collect::<Result<_>>()?;
            tuple_from(NilpotentAlgebra::new(vec![1], vec![])?, None, pts, a.digits)
        }
        Preset::AlgebraFile => {
            let path = a.algebra.as_deref().ok_or_else(|| usage("--algebra is required"))?;
            let j: AlgebraJson = serde_json::from_str(&read_text(path)?)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let pts = parse::number_matrix(a.points.as_deref().ok_or_else(|| usage("--points is required"))?)?;
            let exact = if pts.iter().flatten().all(|x| x.exact().is_some()) {
                NilpotentAlgebra::from_json(&j)?
            } else {
                NilpotentAlgebra::new(j.grading.clone(), vec![])?
            };
            tuple_from(exact, Some(&j), pts, a.digits)
        }
        Preset::Liouville => {
            let (k, s) = (a.k.unwrap_or(3), a.s.unwrap_or(6));
            let setup = liouville_submodule(k, s, &parse::partition(&a.shape)?, a.truncation)?;
            let q = liouville_quotient(&setup)?;
            let pts = LieElement::generators(k, s)?.iter().map(|g| q.project(g)).collect::<Result<Vec<_>>>()?;
            TupleSpec::exact(q.algebra, pts)
        }
    }
}

pub fn delta(a: &DeltaArgs) -> Result<Output> {
    let t = delta_tuple(a)?;
    let recs = delta_series(&t, a.n)?;
    let mode = match t {
        TupleSpec::Exact { .. } => "exact",
        TupleSpec::Real { .. } => "real",
    };
    let rows = recs
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.ball_size.to_string(),
                r.laws_excluded.to_string(),
                r.delta_text(),
                r.argmin_word.to_string(),
            ]
        })
        .collect();
    let mut text = String::new();
    for r in &recs {
        let _ = writeln!(
            text,
            "n={:<3} ball={:<10} laws={:<8} log10 delta={:>12.6}  {}",
            r.n,
            r.ball_size,
            r.laws_excluded,
            nilforge::scalar::log10_rational(&r.delta),
            r.argmin_word
        );
    }
    Ok(Output::new(
        json!({"preset": format!("{:?}", a.preset).to_lowercase(), "mode": mode, "k": t.k(), "records": recs}),
        &header_of(DECAY_CSV_HEADER),
        rows,
        text,
    ))
}

pub fn tau(a: &TauArgs) -> Result<Output> {
    let ranks: Vec<u64> = match (&a.ranks, a.k, a.s) {
        (Some(r), _, _) => parse::usize_list(r)?.into_iter().map(|x| x as u64).collect(),
        (None, Some(k), Some(s)) => (1..=s).map(|d| witt_dimension(k, d)).collect::<Result<_>>()?,
        _ => return Err(usage("give --ranks or both --k and --s")),
    };
    let t = bass_guivarch_exponent(&ranks);
    let joined = ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
    Ok(Output::scalar(json!({"ranks": ranks, "tau": t}), &["ranks", "tau"], vec![joined, t.to_string()], t.to_string()))
}

pub fn remez_check(a: &RemezArgs) -> Result<Output> {
    if let (Some(d), Some(x)) = (a.chebyshev, a.x) {
        let v = chebyshev_t(d, x);
        return Ok(Output::scalar(
            json!({"degree": d, "x": x, "value": v}),
            &["degree", "x", "value"],
            vec![d.to_string(), x.to_string(), v.to_string()],
            v.to_string(),
        ));
    }
    let r = nilforge::lab::remez_check_with(a.trials, a.seed, a.d_max, a.n1_max, a.grid)?;
    let text = format!(
        "{} trials (seed {}): max ratio {:.4}, {} violation(s); remez max ratio {:.4}, {} violation(s)",
        r.trials, r.seed, r.max_ratio, r.violations, r.remez_max_ratio, r.remez_violations
    );
    Ok(Output::scalar(
        serde_json::to_value(&r).expect("serialisable"),
        &["trials", "max_ratio", "violations", "remez_max_ratio", "remez_violations", "seed"],
        vec![
            r.trials.to_string(),
            r.max_ratio.to_string(),
            r.violations.to_string(),
            r.remez_max_ratio.to_string(),
            r.remez_violations.to_string(),
            r.seed.to_string(),
        ],
        text,
    ))
}

pub fn fit_beta(a: &FitArgs) -> Result<Output> {
    let text = read_text(&a.input)?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let bad = |e: csv::Error| Error::Parse(format!("{}: {e}", a.input.display()));
    let headers = rdr.headers().map_err(bad)?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Parse(format!("missing column {name:?}")))
    };
    let (cn, cb, cl, cd, cw) = (col("n")?, col("ball_size")?, col("laws_excluded")?, col("delta")?, col("argmin_word")?);
    let int = |s: &str| s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad integer {s:?}")));
    let mut recs = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(bad)?;
        recs.push(lab::DecayRecord {
            n: int(&row[cn])? as usize,
            ball_size: int(&row[cb])?,
            laws_excluded: int(&row[cl])?,
            delta: parse::decimal(&row[cd])?,
            argmin_word: FreeGroupWord::parse(&row[cw])?,
        });
    }
    let beta = nilforge::fit_beta(&recs, a.tau)?;
    Ok(Output::scalar(
        json!({"tau": a.tau, "points": recs.len(), "beta": beta}),
        &["tau", "points", "beta"],
        vec![a.tau.to_string(), recs.len().to_string(), beta.to_string()],
        format!("beta = {beta:.6}"),
    ))
}
