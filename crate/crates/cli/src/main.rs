//! Command-line front end: exact verification experiments over the twisted
//! unipotent groups, with JSON/CSV reports.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
//! 3 every selected check was skipped by budget.

use maxvar_cli::{emit, flags, runner, suite};

use std::io::Write as _;
use std::time::Instant;

use emit::{csv, Json};
use flags::{Flags, UsageError};
use maxvar_core::chars::{gauss_sum, AddChar, CharCtx};
use maxvar_core::field::{make_field, Fq};
use maxvar_core::norm::{certify_reduced_norm, CertifyReport, NormOracle};
use maxvar_core::unipotent::{Ambient, GroupSpec, SubgroupId, UElem};
use maxvar_core::variety::{betti, predict_count, space_size, BettiTable, CountMethod};
use num_bigint::BigUint;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match dispatch(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("usage error: {e}");
            eprintln!("{USAGE}");
            2
        }
    };
    std::process::exit(code);
}

const USAGE: &str = "\
usage: maxvar <command> [flags]

commands:
  field info      --p P --d D
  group info      --p P --f F --n N --case 1|2
  norm eval       --p P --f F --n N --case C [--k K] --element JSON
  norm certify    --p P --f F --n N --case C
  variety count   --p P --f F --n N --case C --k K [--method brute|fiber]
  variety betti   --p P --f F --n N --case C [--format json|csv]
  variety zeta    --p P --f F --n N --case C --kmax K [--method M]
  chars rho       --p P --f F --n N --case C --b JSON [--table] [--format json|csv]
  chars tracesum  --p P --f F --n N --case C [--b JSON]
  chars gauss     --q Q --k K
  chars pairing   --p P --f F --n N --case C [--b JSON]
  suite           [--default] [--suite NAME] [--p P --f F --n N --case C --kmax K]

common flags: --threads N --budget-ops N --budget-secs N --out FILE
              --format json|csv --config FILE --timing";

fn dispatch(args: &[String]) -> Result<i32, UsageError> {
    let Some(cmd) = args.first() else {
        return Err(UsageError("missing command".into()));
    };
    let sub = args.get(1).map(|s| s.as_str());
    let rest = |n: usize| -> &[String] { &args[n.min(args.len())..] };
    match (cmd.as_str(), sub) {
        ("field", Some("info")) => field_info(&Flags::parse(rest(2))?),
        ("group", Some("info")) => group_info(&Flags::parse(rest(2))?),
        ("norm", Some("eval")) => norm_eval(&Flags::parse(rest(2))?),
        ("norm", Some("certify")) => norm_certify(&Flags::parse(rest(2))?),
        ("variety", Some("count")) => variety_count(&Flags::parse(rest(2))?),
        ("variety", Some("betti")) => variety_betti(&Flags::parse(rest(2))?),
        ("variety", Some("zeta")) => variety_zeta(&Flags::parse(rest(2))?),
        ("chars", Some("rho")) => chars_rho(&Flags::parse(rest(2))?),
        ("chars", Some("tracesum")) => chars_tracesum(&Flags::parse(rest(2))?),
        ("chars", Some("gauss")) => chars_gauss(&Flags::parse(rest(2))?),
        ("chars", Some("pairing")) => chars_pairing(&Flags::parse(rest(2))?),
        ("suite", _) => run_suite_cmd(&Flags::parse(rest(1))?),
        _ => Err(UsageError(format!("unknown command {cmd:?}"))),
    }
}

fn write_output(flags: &Flags, text: &str) -> Result<(), UsageError> {
    match flags.get("out") {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| UsageError(format!("cannot write {path}: {e}")))?;
            f.write_all(text.as_bytes())
                .map_err(|e| UsageError(format!("cannot write {path}: {e}")))?;
        }
        None => {
            print!("{text}");
        }
    }
    Ok(())
}

fn spec_json(spec: &GroupSpec) -> Json {
    Json::Obj(vec![
        ("p", Json::int(spec.p)),
        ("f", Json::int(spec.f)),
        ("n", Json::int(spec.n)),
        ("case", Json::int(spec.case.as_u8())),
    ])
}

fn coeff_array(field: &maxvar_core::field::FieldCtx, x: Fq) -> Json {
    Json::Arr(field.coeffs(x).into_iter().map(Json::int).collect())
}

fn elem_json(grp: &maxvar_core::unipotent::Group<'_>, g: &UElem) -> Json {
    let coeffs = (0..=grp.spec.n as usize)
        .map(|j| coeff_array(grp.field, g.coeff(j)))
        .collect();
    Json::Obj(vec![("a", Json::Arr(coeffs))])
}

// ---------------------------------------------------------------------------
// field / group
// ---------------------------------------------------------------------------

fn field_info(flags: &Flags) -> Result<i32, UsageError> {
    let p = flags.require_u64("p")?;
    let d = flags.require_u64("d")? as u32;
    let ctx = make_field(p, d).map_err(|e| UsageError(e.to_string()))?;
    let json = Json::Obj(vec![
        ("p", Json::int(p)),
        ("d", Json::int(d)),
        (
            "modulus",
            Json::Arr(ctx.modulus().iter().map(|&c| Json::int(c)).collect()),
        ),
        ("size", Json::int(ctx.size())),
    ]);
    write_output(flags, &json.render())?;
    Ok(0)
}

fn group_info(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let amb = Ambient::new(spec, 1).map_err(|e| UsageError(e.to_string()))?;
    let mut subs = Vec::new();
    let mut ids: Vec<(String, SubgroupId)> = vec![
        ("U".into(), SubgroupId::Full),
        ("Z".into(), SubgroupId::Center),
        ("Y_cap_U".into(), SubgroupId::YInU),
    ];
    for d in 1..=spec.n {
        if spec.n % d != 0 {
            continue;
        }
        ids.push((format!("H({d})"), SubgroupId::H(d)));
        ids.push((format!("H+({d})"), SubgroupId::HPlus(d)));
        ids.push((format!("H-({d})"), SubgroupId::HMinus(d)));
        ids.push((format!("Usub({d})"), SubgroupId::Sub(d)));
        if d % 2 == 0 && (spec.n / d) % 2 == 1 {
            ids.push((format!("Gamma({d})"), SubgroupId::Gamma(d)));
        }
    }
    for (name, id) in ids {
        let en = amb.enumerate(id).map_err(|e| UsageError(e.to_string()))?;
        subs.push(Json::Obj(vec![
            ("name", Json::str(name)),
            ("order", Json::int(en.len())),
        ]));
    }
    let json = Json::Obj(vec![
        ("spec", spec_json(&spec)),
        ("rational_field_size", Json::int(amb.field().size())),
        ("subgroups", Json::Arr(subs)),
    ]);
    write_output(flags, &json.render())?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// norm
// ---------------------------------------------------------------------------

fn parse_element(
    flags: &Flags,
    grp: &maxvar_core::unipotent::Group<'_>,
) -> Result<UElem, UsageError> {
    let raw = flags
        .get("element")
        .ok_or_else(|| UsageError("missing --element".into()))?;
    let value: serde_json::Value =
        serde_json::from_str(raw).map_err(|e| UsageError(format!("bad element JSON: {e}")))?;
    let arr = value
        .get("a")
        .and_then(|v| v.as_array())
        .ok_or_else(|| UsageError("element JSON needs key \"a\" with an array".into()))?;
    if arr.len() != grp.spec.n as usize + 1 {
        return Err(UsageError(format!(
            "element needs {} coefficient vectors, got {}",
            grp.spec.n + 1,
            arr.len()
        )));
    }
    let mut coeffs = Vec::with_capacity(arr.len());
    for entry in arr {
        let digits: Vec<u64> = entry
            .as_array()
            .ok_or_else(|| UsageError("coefficients must be arrays of integers".into()))?
            .iter()
            .map(|d| {
                d.as_u64().ok_or_else(|| {
                    UsageError("coefficient digits must be nonnegative integers".into())
                })
            })
            .collect::<Result<_, _>>()?;
        if digits.len() != grp.field.degree() as usize {
            return Err(UsageError(format!(
                "each coefficient needs {} digits, got {}",
                grp.field.degree(),
                digits.len()
            )));
        }
        coeffs.push(grp.field.from_coeffs(&digits));
    }
    if coeffs[0] != grp.field.one() {
        return Err(UsageError("constant coefficient must be 1".into()));
    }
    Ok(grp.elem(&coeffs[1..]))
}

fn norm_eval(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let k = flags.u64_flag("k")?.unwrap_or(1) as u32;
    let amb = Ambient::new(spec, k).map_err(|e| UsageError(e.to_string()))?;
    let grp = amb.group();
    let g = parse_element(flags, &grp)?;
    let oracle = NormOracle::new(grp);
    let value = oracle.norm_morphism(&g);
    let json = Json::Obj(vec![
        ("spec", spec_json(&spec)),
        ("k", Json::int(k)),
        ("element", elem_json(&grp, &g)),
        ("norm", coeff_array(amb.field(), value)),
    ]);
    write_output(flags, &json.render())?;
    Ok(0)
}

fn certify_json(spec: &GroupSpec, report: &CertifyReport) -> Json {
    Json::Obj(vec![
        ("spec", spec_json(spec)),
        ("group_order", Json::int(report.group_order)),
        ("certified", Json::Bool(report.certified())),
        ("homomorphism_ok", Json::Bool(report.homomorphism_ok)),
        ("homomorphism_pairs", Json::int(report.homomorphism_pairs)),
        (
            "homomorphism_exhaustive",
            Json::Bool(report.homomorphism_exhaustive),
        ),
        ("invariance_ok", Json::Bool(report.invariance_ok)),
        ("invariance_checks", Json::int(report.invariance_checks)),
        (
            "invariance_exhaustive",
            Json::Bool(report.invariance_exhaustive),
        ),
        (
            "center_matches_trace",
            Json::Bool(report.center_matches_trace),
        ),
        (
            "decomposition_witnesses",
            Json::int(report.decomposition_witnesses),
        ),
        (
            "decomposition_complete",
            Json::Bool(report.decomposition_complete),
        ),
        (
            "base_case",
            Json::Obj(vec![
                ("used", Json::str(report.base_case_used.clone())),
                (
                    "rejected_variant",
                    Json::str(report.base_case_rejected.clone()),
                ),
                ("reason", Json::str(report.base_case_reason.clone())),
            ]),
        ),
    ])
}

fn norm_certify(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let amb = Ambient::new(spec, 1).map_err(|e| UsageError(e.to_string()))?;
    let report = certify_reduced_norm(&amb).map_err(|e| UsageError(e.to_string()))?;
    let ok = report.certified();
    write_output(flags, &certify_json(&spec, &report).render())?;
    Ok(if ok { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// variety
// ---------------------------------------------------------------------------

fn parse_method(flags: &Flags) -> Result<CountMethod, UsageError> {
    match flags.get("method").unwrap_or("fiber") {
        "fiber" => Ok(CountMethod::Fiber),
        "brute" => Ok(CountMethod::Brute),
        other => Err(UsageError(format!("unknown method {other:?}"))),
    }
}

/// Canonical `F_q` element index as a report key; components beyond the
/// precomputed range fall back to a leaked string (bounded by one `q`).
fn component_key(i: usize) -> &'static str {
    const DIGITS: [&str; 32] = [
        "0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16",
        "17", "18", "19", "20", "21", "22", "23", "24", "25", "26", "27", "28", "29", "30", "31",
    ];
    DIGITS
        .get(i)
        .copied()
        .unwrap_or_else(|| Box::leak(i.to_string().into_boxed_str()))
}

fn variety_count(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let k = flags.require_u64("k")? as u32;
    let method = parse_method(flags)?;
    let threads = flags.threads()?;
    let budget = flags.budget()?;
    let amb = Ambient::new(spec, k).map_err(|e| UsageError(e.to_string()))?;
    let space = space_size(&amb, method);
    if !budget.allows(space, 4 * (spec.n as u64 + 1).pow(2)) {
        return Err(UsageError(format!(
            "sweep of {space} points exceeds the budget; raise --budget-ops/--budget-secs"
        )));
    }
    let start = Instant::now();
    let outcome =
        runner::parallel_count(&amb, method, threads).map_err(|e| UsageError(e.to_string()))?;
    let predicted = predict_count(spec, k).map_err(|e| UsageError(e.to_string()))?;
    let matches = BigUint::from(outcome.total) == predicted;
    let per_component = Json::Obj(
        outcome
            .per_component
            .iter()
            .enumerate()
            .map(|(i, &c)| (component_key(i), Json::int(c)))
            .collect(),
    );
    let mut fields = vec![
        ("spec", spec_json(&spec)),
        ("k", Json::int(k)),
        ("total", Json::int(outcome.total)),
        ("per_component", per_component),
        ("predicted", Json::Int(predicted.to_string())),
        ("match", Json::Bool(matches)),
        ("method", Json::str(method.name())),
    ];
    if flags.has("timing") {
        fields.push(("wall_time_ms", Json::int(start.elapsed().as_millis())));
    }
    write_output(flags, &Json::Obj(fields).render())?;
    Ok(if matches { 0 } else { 1 })
}

fn betti_json(table: &BettiTable) -> Json {
    let rows = table
        .rows
        .iter()
        .map(|r| {
            Json::Obj(vec![
                ("d", Json::int(r.d)),
                ("n1", Json::int(r.n1)),
                ("degree", Json::int(r.degree)),
                ("count", Json::Int(r.char_count.to_string())),
                ("dim", Json::Int(r.dim_rho.to_string())),
                ("sign", Json::int(r.sign)),
            ])
        })
        .collect();
    Json::Obj(vec![
        ("spec", spec_json(&table.spec)),
        ("rows", Json::Arr(rows)),
        (
            "betti_numbers",
            Json::Arr(
                table
                    .betti_numbers()
                    .into_iter()
                    .map(|(deg, dim)| {
                        Json::Obj(vec![
                            ("degree", Json::int(deg)),
                            ("dim", Json::Int(dim.to_string())),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "maximality_bound",
            Json::Int(table.maximality_bound().to_string()),
        ),
    ])
}

fn variety_betti(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let table = betti(spec).map_err(|e| UsageError(e.to_string()))?;
    let text = match flags.get("format").unwrap_or("json") {
        "json" => betti_json(&table).render(),
        "csv" => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.d.to_string(),
                        r.n1.to_string(),
                        r.degree.to_string(),
                        r.char_count.to_string(),
                        r.dim_rho.to_string(),
                        r.sign.to_string(),
                    ]
                })
                .collect();
            csv(&["d", "n1", "degree", "count", "dim", "sign"], &rows)
        }
        other => return Err(UsageError(format!("unknown format {other:?}"))),
    };
    write_output(flags, &text)?;
    Ok(0)
}

fn variety_zeta(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let kmax = flags.require_u64("kmax")? as u32;
    let method = parse_method(flags)?;
    let threads = flags.threads()?;
    let budget = flags.budget()?;
    let mut rows = Vec::new();
    let mut all_match = true;
    for k in 1..=kmax {
        let predicted = predict_count(spec, k).map_err(|e| UsageError(e.to_string()))?;
        let amb = match Ambient::new(spec, k) {
            Ok(a) => a,
            Err(_) => {
                rows.push(vec![
                    k.to_string(),
                    "skipped".into(),
                    predicted.to_string(),
                    "skipped".into(),
                ]);
                continue;
            }
        };
        let space = space_size(&amb, method);
        if !budget.allows(space, 4 * (spec.n as u64 + 1).pow(2)) {
            rows.push(vec![
                k.to_string(),
                "skipped".into(),
                predicted.to_string(),
                "skipped".into(),
            ]);
            continue;
        }
        let outcome =
            runner::parallel_count(&amb, method, threads).map_err(|e| UsageError(e.to_string()))?;
        let matches = BigUint::from(outcome.total) == predicted;
        all_match &= matches;
        rows.push(vec![
            k.to_string(),
            outcome.total.to_string(),
            predicted.to_string(),
            matches.to_string(),
        ]);
    }
    write_output(flags, &csv(&["k", "counted", "predicted", "match"], &rows))?;
    Ok(if all_match { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// chars
// ---------------------------------------------------------------------------

fn parse_b(flags: &Flags, amb: &Ambient) -> Result<Option<AddChar>, UsageError> {
    let Some(raw) = flags.get("b") else {
        return Ok(None);
    };
    let value: serde_json::Value =
        serde_json::from_str(raw).map_err(|e| UsageError(format!("bad --b JSON: {e}")))?;
    let digits: Vec<u64> = value
        .as_array()
        .ok_or_else(|| UsageError("--b must be a JSON array of digits".into()))?
        .iter()
        .map(|d| {
            d.as_u64()
                .ok_or_else(|| UsageError("--b digits must be nonnegative integers".into()))
        })
        .collect::<Result<_, _>>()?;
    if digits.len() != amb.field().degree() as usize {
        return Err(UsageError(format!(
            "--b needs {} digits for this field",
            amb.field().degree()
        )));
    }
    Ok(Some(AddChar {
        b: amb.field().from_coeffs(&digits),
    }))
}

fn chars_rho(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let amb = Ambient::new(spec, 1).map_err(|e| UsageError(e.to_string()))?;
    let ctx = CharCtx::new(&amb).map_err(|e| UsageError(e.to_string()))?;
    let chi = parse_b(flags, &amb)?.ok_or_else(|| UsageError("missing --b".into()))?;
    let rho = ctx.build_rho(&chi).map_err(|e| UsageError(e.to_string()))?;
    let grp = ctx.group();
    if flags.get("format") == Some("csv") {
        // Character table CSV: element coefficients and cyclotomic value
        // coefficients, semicolon-joined digit strings.
        let en = rho.character.enumerator();
        let mut rows = Vec::new();
        for i in 0..en.len() {
            let g = en.element(i);
            let mut row: Vec<String> = (1..=spec.n as usize)
                .map(|j| {
                    amb.field()
                        .coeffs(g.coeff(j))
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .collect();
            row.push(maxvar_core::chars::cyc_coeff_strings(rho.character.value_at(i)).join(";"));
            rows.push(row);
        }
        let mut header: Vec<String> = (1..=spec.n).map(|j| format!("a{j}")).collect();
        header.push("value".into());
        let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
        write_output(flags, &csv(&header_refs, &rows))?;
        return Ok(0);
    }
    let mut fields = vec![
        ("spec", spec_json(&spec)),
        ("base_character", Json::str("x -> zeta_p^lift(x)")),
        ("b", coeff_array(amb.field(), chi.b)),
        ("conductor_exp", Json::int(rho.conductor_exp)),
        ("n1", Json::int(rho.n1)),
        ("dim", Json::int(rho.dim)),
        ("degree", Json::int(rho.degree)),
        ("eigen_sign", Json::int(rho.eigen_sign)),
        ("eigen_exp_times2", Json::int(rho.eigen_exp_times2)),
    ];
    if flags.has("table") {
        let en = rho.character.enumerator();
        let mut entries = Vec::new();
        for i in 0..en.len() {
            let g = en.element(i);
            let coeffs = maxvar_core::chars::cyc_coeff_pairs(rho.character.value_at(i))
                .into_iter()
                .map(|(num, den)| Json::Arr(vec![Json::Int(num), Json::Int(den)]))
                .collect();
            entries.push(Json::Obj(vec![
                ("element", elem_json(&grp, &g)),
                (
                    "value",
                    Json::Obj(vec![
                        ("p", Json::int(spec.p)),
                        ("coeffs", Json::Arr(coeffs)),
                    ]),
                ),
            ]));
        }
        fields.push(("character", Json::Arr(entries)));
    }
    write_output(flags, &Json::Obj(fields).render())?;
    Ok(0)
}

fn chars_tracesum(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let amb = Ambient::new(spec, 1).map_err(|e| UsageError(e.to_string()))?;
    let ctx = CharCtx::new(&amb).map_err(|e| UsageError(e.to_string()))?;
    let chosen = parse_b(flags, &amb)?;
    let chars: Vec<AddChar> = match chosen {
        Some(chi) => vec![chi],
        None => ctx.characters().collect(),
    };
    let mut ok = true;
    let mut entries = Vec::new();
    for chi in chars {
        let rep = ctx.trace_sum(&chi).map_err(|e| UsageError(e.to_string()))?;
        ok &= rep.matches && rep.positive;
        entries.push(Json::Obj(vec![
            ("b", coeff_array(amb.field(), chi.b)),
            ("conductor_exp", Json::int(rep.conductor_exp)),
            ("value", Json::Int(rep.value.to_string())),
            ("expected", Json::Int(rep.expected.to_string())),
            ("match", Json::Bool(rep.matches)),
            ("positive", Json::Bool(rep.positive)),
        ]));
    }
    let json = Json::Obj(vec![
        ("spec", spec_json(&spec)),
        ("base_character", Json::str("x -> zeta_p^lift(x)")),
        ("trace_sums", Json::Arr(entries)),
        ("all_match", Json::Bool(ok)),
    ]);
    write_output(flags, &json.render())?;
    Ok(if ok { 0 } else { 1 })
}

/// Splits a prime power `q = p^f`.
fn prime_power_split(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if !maxvar_core::field::is_prime(p) {
        return None;
    }
    let mut f = 0u32;
    let mut v = q;
    while v % p == 0 {
        v /= p;
        f += 1;
    }
    (v == 1).then_some((p, f))
}

fn chars_gauss(flags: &Flags) -> Result<i32, UsageError> {
    let q = flags.require_u64("q")?;
    let k = flags.require_u64("k")? as u32;
    let (p, f) =
        prime_power_split(q).ok_or_else(|| UsageError(format!("--q {q} is not a prime power")))?;
    let rep = gauss_sum(p, f, k).map_err(|e| UsageError(e.to_string()))?;
    let json = Json::Obj(vec![
        ("q", Json::int(q)),
        ("k", Json::int(k)),
        (
            "b",
            Json::Arr(rep.b_coeffs.iter().map(|&c| Json::int(c)).collect()),
        ),
        ("value", Json::Int(rep.value.to_string())),
        ("expected", Json::Int(rep.expected.to_string())),
        ("match", Json::Bool(rep.matches)),
    ]);
    write_output(flags, &json.render())?;
    Ok(if rep.matches { 0 } else { 1 })
}

fn chars_pairing(flags: &Flags) -> Result<i32, UsageError> {
    let spec = flags.group_spec()?;
    let amb = Ambient::new(spec, 1).map_err(|e| UsageError(e.to_string()))?;
    let ctx = CharCtx::new(&amb).map_err(|e| UsageError(e.to_string()))?;
    let chosen = parse_b(flags, &amb)?;
    let chars: Vec<AddChar> = match chosen {
        Some(chi) => vec![chi],
        None => ctx.characters().collect(),
    };
    let mut ok = true;
    let mut entries = Vec::new();
    for chi in chars {
        let rep = ctx
            .pairing_check(&chi)
            .map_err(|e| UsageError(e.to_string()))?;
        ok &= rep.consistent();
        entries.push(Json::Obj(vec![
            ("b", coeff_array(amb.field(), chi.b)),
            ("conductor_exp", Json::int(rep.conductor_exp)),
            ("radical_size", Json::int(rep.radical_size)),
            ("nondegenerate", Json::Bool(rep.nondegenerate)),
            ("half_field_isotropic", Json::Bool(rep.isotropic_ok)),
            ("half_field_maximal", Json::Bool(rep.maximal_ok)),
            ("degenerate_expected", Json::Bool(rep.degenerate_expected)),
            ("consistent", Json::Bool(rep.consistent())),
        ]));
    }
    let json = Json::Obj(vec![
        ("spec", spec_json(&spec)),
        ("base_character", Json::str("x -> zeta_p^lift(x)")),
        ("pairings", Json::Arr(entries)),
        ("all_consistent", Json::Bool(ok)),
    ]);
    write_output(flags, &json.render())?;
    Ok(if ok { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// suite
// ---------------------------------------------------------------------------

fn run_suite_cmd(flags: &Flags) -> Result<i32, UsageError> {
    let threads = flags.threads()?;
    let budget = flags.budget()?;
    let selector = flags.get("suite").unwrap_or("all").to_string();
    let start = Instant::now();

    let specs = if flags.has("p") {
        vec![flags.group_spec()?]
    } else {
        suite::default_matrix()
    };
    let kmax_override = flags.u64_flag("kmax")?.map(|k| k as u32);
    let kmax = |s: &GroupSpec| kmax_override.unwrap_or_else(|| suite::default_kmax(s));

    let checks = suite::run_suite(&selector, &specs, kmax, threads, budget).map_err(UsageError)?;

    for c in &checks {
        eprintln!(
            "{:<7} {:<34} measured: {} | expected: {} [{}]",
            c.status.as_str().to_uppercase(),
            c.name,
            c.measured,
            c.expected,
            c.source.as_str()
        );
    }
    let pass = checks
        .iter()
        .filter(|c| c.status == suite::Status::Pass)
        .count();
    let fail = checks
        .iter()
        .filter(|c| c.status == suite::Status::Fail)
        .count();
    let skip = checks
        .iter()
        .filter(|c| c.status == suite::Status::Skipped)
        .count();
    eprintln!("suite: {pass} passed, {fail} failed, {skip} skipped");

    let mut fields = vec![
        ("suite", Json::str(selector)),
        (
            "checks",
            Json::Arr(
                checks
                    .iter()
                    .map(|c| {
                        Json::Obj(vec![
                            ("name", Json::str(c.name.clone())),
                            ("status", Json::str(c.status.as_str())),
                            ("measured", Json::str(c.measured.clone())),
                            ("expected", Json::str(c.expected.clone())),
                            ("source", Json::str(c.source.as_str())),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "summary",
            Json::Obj(vec![
                ("pass", Json::int(pass as u64)),
                ("fail", Json::int(fail as u64)),
                ("skipped", Json::int(skip as u64)),
            ]),
        ),
    ];
    if flags.has("timing") {
        fields.push(("wall_time_ms", Json::int(start.elapsed().as_millis())));
    }
    write_output(flags, &Json::Obj(fields).render())?;
    Ok(suite::exit_code(&checks))
}
