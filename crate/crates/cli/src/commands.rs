use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use prevision::checker::{
    check_1aul, check_2coherent, check_2convex, check_c_convex, check_capacity, check_centered,
    check_centered_2convex, check_coherent, check_convex, check_internality, check_n_coherent,
    check_n_convex, classify_with, ConsistencyClass, Verdict,
};
use prevision::extension::{gbr_interval, natext, verify_gbr_family};
use prevision::models::{build_var_assessment, conjugate_dominance, var_prevision, FiniteDistribution, VarPrevision};
use prevision::{parse_rational, Gamble, Mode, Order, Partition, Rational};

use crate::document::{gamble_from_spec, AssessmentDocument, GambleSpec, Number, Resolved};
use crate::report::{check_record, extension_record, Report, ValueRecord};
use crate::{CliError, GbrArgs, VarArgs};

const DEFAULT_ORDER: usize = 3;

pub fn load(path: &Path) -> Result<Resolved, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    AssessmentDocument::from_json(&text)?.resolve()
}

/// Parses a class name. `n-convex` and `n-coherent` take their order from
/// `n`; `3-coherent` and the like carry it in the name.
pub fn parse_class(name: &str, n: Option<Order>) -> Result<ConsistencyClass, CliError> {
    use ConsistencyClass::*;
    let order = n.unwrap_or(Order::Finite(DEFAULT_ORDER));
    let class = match name.trim().to_ascii_lowercase().as_str() {
        "internality" | "1-coherent" => Internality,
        "1-aul" => OneAul,
        "2-convex" => TwoConvex,
        "centered-2-convex" => CenteredTwoConvex,
        "2-coherent" => TwoCoherent,
        "n-convex" => NConvex(order),
        "n-coherent" => NCoherent(order),
        "convex" => Convex,
        "c-convex" => CConvex,
        "coherent" => Coherent,
        "capacity" => Capacity,
        other => {
            let parsed = other.split_once('-').and_then(|(k, kind)| {
                let k = k.parse::<usize>().ok()?;
                match kind {
                    "convex" => Some(NConvex(Order::Finite(k))),
                    "coherent" => Some(NCoherent(Order::Finite(k))),
                    _ => None,
                }
            });
            parsed.ok_or_else(|| CliError::Usage(format!("unknown class '{name}'")))?
        }
    };
    Ok(class)
}

pub fn run_class(p: &prevision::Assessment, class: ConsistencyClass) -> Result<Verdict, CliError> {
    use ConsistencyClass::*;
    Ok(match class {
        Internality => check_internality(p),
        OneAul => check_1aul(p),
        TwoConvex => check_2convex(p),
        CenteredTwoConvex => check_centered_2convex(p),
        TwoCoherent => check_2coherent(p),
        NConvex(n) => check_n_convex(p, n)?,
        NCoherent(n) => check_n_coherent(p, n)?,
        Convex => check_convex(p),
        CConvex => check_c_convex(p),
        Coherent => check_coherent(p),
        Capacity => check_capacity(p)?,
    })
}

pub fn cmd_check(doc: &Resolved, class: Option<&str>, n: Option<Order>) -> Result<Report, CliError> {
    let mut report = Report::new("check");
    let p = &doc.assessment;
    let table = match class {
        Some(name) => {
            let c = parse_class(name, n)?;
            vec![(c, run_class(p, c)?)]
        }
        None => {
            let order = match n {
                None => DEFAULT_ORDER,
                Some(Order::Finite(k)) => k,
                Some(Order::Unbounded) => {
                    return Err(CliError::Usage(
                        "--n inf applies to a single n-term class".into(),
                    ))
                }
            };
            classify_with(p, order)?
        }
    };
    for (c, v) in &table {
        report.checks.push(check_record(&c.to_string(), v, &doc.labels));
    }
    Ok(report.with_check_status())
}

pub fn cmd_extend(doc: &Resolved, mode: Mode, targets: &[String]) -> Result<Report, CliError> {
    let mut report = Report::new("extend");
    let p = &doc.assessment;
    let resolved: Vec<_> = if targets.is_empty() {
        p.entries()
            .iter()
            .zip(&doc.labels)
            .map(|(e, l)| (e.gamble.clone(), l.clone()))
            .collect()
    } else {
        targets
            .iter()
            .enumerate()
            .map(|(i, t)| doc.target(t, &format!("--target[{i}]")))
            .collect::<Result<_, _>>()?
    };
    for (t, label) in &resolved {
        let r = natext(p, t, mode);
        report
            .extensions
            .push(extension_record(label, &mode.to_string(), &r, &doc.labels));
    }
    Ok(report)
}

fn rational_arg(text: &str, flag: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|_| CliError::field(flag, format!("'{text}' is not an exact rational")))
}

fn rational_list(text: &str, flag: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .enumerate()
        .map(|(i, v)| rational_arg(v, &format!("{flag}[{i}]")))
        .collect()
}

fn partition_arg(atoms: Option<&str>, size: usize) -> Result<Arc<Partition>, CliError> {
    let p = match atoms {
        Some(a) => Partition::new(a.split(',').map(|s| s.trim().to_string()))
            .map_err(|e| CliError::field("--atoms", e.to_string()))?,
        None => Partition::anonymous(size).map_err(|e| CliError::field("--atoms", e.to_string()))?,
    };
    if p.size() != size {
        return Err(CliError::field(
            "--atoms",
            format!("{} atoms for {size} values", p.size()),
        ));
    }
    Ok(p)
}

pub fn cmd_gbr(args: &GbrArgs) -> Result<Report, CliError> {
    let values = rational_list(&args.gamble_values, "--gamble-values")?;
    let partition = partition_arg(args.atoms.as_deref(), values.len())?;
    let x = Gamble::new(&partition, values)?;
    let labels: Vec<String> = args.event.split(',').map(|s| s.trim().to_string()).collect();
    let a = crate::document::event_from_atoms(&partition, &labels, "--event")?;
    let r = rational_arg(&args.r, "--r")?;
    let q = rational_arg(&args.q, "--q")?;
    if r == q {
        return Err(CliError::Usage("--r and --q must differ".into()));
    }
    let pa = rational_arg(&args.pa, "--pa")?;
    let pxa = rational_arg(&args.pxa, "--pxa")?;
    let (lo, hi) = gbr_interval(&x.clone().given(a.clone())?);
    let verdict = verify_gbr_family(&a, &x, &r, &q, &pa, &pxa)?;
    let mut report = Report::new("gbr");
    report.interval = Some([lo.to_string(), hi.to_string()]);
    let entry_labels = [
        format!("{a}"),
        format!("X|{a}"),
        format!("{a}(X-{r})"),
        format!("{a}(X-{q})"),
    ];
    report
        .checks
        .push(check_record("2-coherent", &verdict, &entry_labels));
    Ok(report.with_check_status())
}

fn var_domain(args: &VarArgs, partition: &Arc<Partition>) -> Result<Vec<(String, Gamble)>, CliError> {
    let mut domain: Vec<(String, Gamble)> = Vec::new();
    if let Some(path) = &args.gambles {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let specs: BTreeMap<String, GambleSpec> =
            serde_json::from_str(&text).map_err(CliError::Json)?;
        for (name, spec) in &specs {
            domain.push((name.clone(), gamble_from_spec(partition, spec, name)?));
        }
    }
    for (i, g) in args.gamble.iter().enumerate() {
        let path = format!("--gamble[{i}]");
        let (name, values) = g
            .split_once('=')
            .ok_or_else(|| CliError::field(&path, "expected NAME=v1,v2,..."))?;
        let spec = GambleSpec::Values(values.split(',').map(|v| Number::Text(v.to_string())).collect());
        domain.push((name.trim().to_string(), gamble_from_spec(partition, &spec, &path)?));
    }
    if domain.is_empty() {
        return Err(CliError::Usage("give at least one gamble with --gamble or --gambles".into()));
    }
    let mut negations = Vec::new();
    for (name, g) in &domain {
        let neg = -g;
        if !domain.iter().chain(&negations).any(|(_, h)| *h == neg) {
            negations.push((format!("-{name}"), neg));
        }
    }
    domain.extend(negations);
    Ok(domain)
}

pub fn cmd_var(args: &VarArgs) -> Result<Report, CliError> {
    let probs = rational_list(&args.probs, "--probs")?;
    let partition = partition_arg(args.atoms.as_deref(), probs.len())?;
    let alpha = rational_arg(&args.alpha, "--alpha")?;
    let dist = FiniteDistribution::new(&partition, probs)?;
    let domain = var_domain(args, &partition)?;
    let mut report = Report::new("var");
    for (name, g) in &domain {
        let v = var_prevision(&dist, g, &alpha)?;
        report.values.push(ValueRecord {
            name: format!("P^V({name})"),
            value: v.to_string(),
        });
    }
    let vp = VarPrevision::new(alpha, dist, domain.iter().map(|(_, g)| g.clone()).collect())?;
    let a = build_var_assessment(&vp)?;
    let mut labels = vec![String::new(); a.len()];
    for (name, g) in domain.iter().rev() {
        if let Some(i) = a.position(&prevision::ConditionalGamble::unconditional(g.clone())) {
            labels[i] = name.clone();
        }
    }
    for l in labels.iter_mut().filter(|l| l.is_empty()) {
        *l = "0".into();
    }
    report
        .checks
        .push(check_record("centered", &check_centered(&a), &labels));
    report
        .checks
        .push(check_record("2-convex", &check_2convex(&a), &labels));
    let dominance = conjugate_dominance(&a)?;
    let mut coherent = check_record("2-coherent", &check_2coherent(&a), &labels);
    if !dominance.is_satisfied() {
        coherent.detail = Some("A6, λ=−1".into());
    }
    report.checks.push(coherent);
    report
        .checks
        .push(check_record("conjugate dominance", &dominance, &labels));
    // Centering and 2-convexity are the guaranteed properties; the rest is
    // diagnostic.
    report.exit_status = i32::from(report.checks[..2].iter().any(|c| !c.satisfied));
    Ok(report)
}
