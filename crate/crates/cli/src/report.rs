use ybe::records::Record;
use ybe::retraction::{is_gi_counterexample, is_irretractable, multipermutation_level};
use ybe::Solution;

pub fn describe(r: &Record) -> String {
    match r {
        Record::Group(g) => format!("group n={}", g.order()),
        Record::Solution(s) => format!("solution n={}", s.size()),
        Record::CycleSet(c) => format!("cycleset n={}", c.size()),
        Record::Brace(b) => format!("brace n={}", b.order()),
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Report for the solution behind a record; braces report on `r_A`.
pub fn analyze(r: &Record) -> Option<String> {
    let (kind, s) = match r {
        Record::Group(_) => return None,
        Record::Solution(s) => ("solution", s.clone()),
        Record::CycleSet(c) => ("cycleset", c.to_solution().expect("validated cycle set")),
        Record::Brace(b) => ("brace", b.solution()),
    };
    Some(format!("kind={kind} {}", solution_report(&s)))
}

pub fn solution_report(s: &Solution) -> String {
    let involutive = s.is_involutive();
    let na = "n/a".to_string();
    let (irretractable, mpl, simple) = if involutive {
        let irr = is_irretractable(s).map(|b| flag(b).to_string()).unwrap_or_else(|_| na.clone());
        let mpl = match multipermutation_level(s) {
            Ok(Some(m)) => m.to_string(),
            Ok(None) => "none".to_string(),
            Err(_) => na.clone(),
        };
        let simple = s.is_simple().map(|b| flag(b).to_string()).unwrap_or_else(|_| na.clone());
        (irr, mpl, simple)
    } else {
        (na.clone(), na.clone(), na)
    };
    format!(
        "n={} involutive={} square_free={} indecomposable={} irretractable={} mpl={} simple={} gi_counterexample={}",
        s.size(),
        flag(involutive),
        flag(s.is_square_free()),
        flag(s.is_indecomposable()),
        irretractable,
        mpl,
        simple,
        flag(is_gi_counterexample(s)),
    )
}
