use std::fmt;

use super::{Action, Automaton, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overlap {
    /// The later rule is covered entirely by the earlier one and never fires.
    Shadowed { earlier: usize, later: usize },
    /// Neither pattern contains the other; priority decides by order alone.
    Partial { earlier: usize, later: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub deterministic: bool,
    pub overlaps: Vec<Overlap>,
    /// Rules selected for no concrete (state, tape symbols, top).
    pub unreachable_rules: Vec<usize>,
    pub states_without_rules: Vec<String>,
    /// (pop state, pop top, suspended state, suspended top) with no follow rule.
    pub follow_gaps: Vec<(String, String, String, String)>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.overlaps.is_empty()
            && self.unreachable_rules.is_empty()
            && self.states_without_rules.is_empty()
            && self.follow_gaps.is_empty()
    }
}

fn component_subset(a: Option<usize>, b: Option<usize>) -> bool {
    b.is_none() || a == b
}

fn component_meets(a: Option<usize>, b: Option<usize>) -> bool {
    a.is_none() || b.is_none() || a == b
}

fn subset(a: &Rule, b: &Rule) -> bool {
    component_subset(a.state, b.state)
        && component_subset(a.top, b.top)
        && a.tape.iter().zip(&b.tape).all(|(x, y)| component_subset(*x, *y))
}

fn meets(a: &Rule, b: &Rule) -> bool {
    component_meets(a.state, b.state)
        && component_meets(a.top, b.top)
        && a.tape.iter().zip(&b.tape).all(|(x, y)| component_meets(*x, *y))
}

/// Static checks over an automaton's rule set.
///
/// A specific rule listed before a more general one with a different action
/// is the intended default idiom and is not reported.
pub fn validate(aut: &Automaton) -> ValidationReport {
    let rules = aut.rules();
    let mut overlaps = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        for (j, b) in rules.iter().enumerate().skip(i + 1) {
            if a.action == b.action || !meets(a, b) || subset(a, b) {
                continue;
            }
            if subset(b, a) {
                overlaps.push(Overlap::Shadowed { earlier: i, later: j });
            } else {
                overlaps.push(Overlap::Partial { earlier: i, later: j });
            }
        }
    }

    let q = aut.states().len();
    let gamma = aut.stack_syms().len();
    let mut used = vec![false; rules.len()];
    let mut state_has_rule = vec![false; q];
    let mut pops = vec![false; q * gamma];
    let mut syms = vec![0; aut.heads()];
    for cell in 0..aut.dispatch_cells() {
        if let Some(r) = aut.rule_at_cell(cell) {
            let (state, top) = aut.decode_cell(cell, &mut syms);
            used[r] = true;
            state_has_rule[state] = true;
            if rules[r].action == Action::Pop {
                pops[state * gamma + top] = true;
            }
        }
    }

    let mut follow_gaps = Vec::new();
    for (pair, _) in pops.iter().enumerate().filter(|(_, &p)| p) {
        let (ts, ty) = (pair / gamma, pair % gamma);
        for us in 0..q {
            for uy in 0..gamma {
                if aut.follow_for(us, ts, uy, ty).is_none() {
                    follow_gaps.push((
                        aut.states()[ts].clone(),
                        aut.stack_syms()[ty].clone(),
                        aut.states()[us].clone(),
                        aut.stack_syms()[uy].clone(),
                    ));
                }
            }
        }
    }

    ValidationReport {
        deterministic: aut.is_deterministic(),
        overlaps,
        unreachable_rules: used.iter().enumerate().filter(|(_, &u)| !u).map(|(i, _)| i).collect(),
        states_without_rules: (0..q).filter(|&s| !state_has_rule[s]).map(|s| aut.states()[s].clone()).collect(),
        follow_gaps,
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "deterministic: {}", self.deterministic)?;
        for o in &self.overlaps {
            match o {
                Overlap::Shadowed { earlier, later } => {
                    writeln!(f, "warning: rule #{} is shadowed by rule #{} (unreachable)", later + 1, earlier + 1)?
                }
                Overlap::Partial { earlier, later } => {
                    writeln!(f, "warning: rules #{} and #{} overlap with different actions", earlier + 1, later + 1)?
                }
            }
        }
        for r in &self.unreachable_rules {
            writeln!(f, "warning: rule #{} never fires", r + 1)?;
        }
        for s in &self.states_without_rules {
            writeln!(f, "warning: state `{s}` has no rules")?;
        }
        for (ts, ty, us, uy) in self.follow_gaps.iter().take(20) {
            writeln!(f, "warning: no follow rule for terminator ({ts},{ty}) under ({us},{uy})")?;
        }
        if self.follow_gaps.len() > 20 {
            writeln!(f, "warning: ... {} more follow gaps", self.follow_gaps.len() - 20)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_automaton;

    const HEAD: &str = "pda v\ntapesyms a\nstacksyms Z\nstates s0 s1\nstart s0\n";

    #[test]
    fn accept_empty_is_clean() {
        let aut = parse_automaton(&format!(
            "{HEAD}rule s0 < Z => op s1 R Z\nrule s1 > Z => accept\nrule s1 * Z => halt\n"
        ))
        .unwrap();
        let report = validate(&aut);
        assert!(report.deterministic);
        assert!(report.overlaps.is_empty());
        assert!(report.states_without_rules.is_empty());
    }

    #[test]
    fn choose_makes_nondeterministic() {
        let aut = parse_automaton(&format!("{HEAD}rule s0 * Z => choose s0 S Z | s1 S Z\nrule s1 * * => halt\n")).unwrap();
        assert!(!validate(&aut).deterministic);
    }

    #[test]
    fn general_before_specific_is_shadowed() {
        let aut = parse_automaton(&format!("{HEAD}rule s1 * Z => halt\nrule s1 a Z => accept\n")).unwrap();
        let report = validate(&aut);
        assert_eq!(report.overlaps, vec![Overlap::Shadowed { earlier: 0, later: 1 }]);
        assert_eq!(report.unreachable_rules, vec![1]);
        assert_eq!(report.states_without_rules, vec!["s0".to_string()]);
        assert!(report.to_string().contains("shadowed"));
    }

    #[test]
    fn partial_overlap() {
        let src = "pda v\ntapesyms a\nstacksyms Z A\nstates s\nstart s\nrule s a * => halt\nrule s * A => accept\n";
        let report = validate(&parse_automaton(src).unwrap());
        assert_eq!(report.overlaps, vec![Overlap::Partial { earlier: 0, later: 1 }]);
    }

    #[test]
    fn follow_gaps_for_pop_states() {
        let src = "pda v\ntapesyms a\nstacksyms Z A\nstates s p\nstart s\nrule s * * => push p S A\nrule p * A => pop\nrule p * Z => halt\nfollow s p * * => s S UNDER\n";
        let report = validate(&parse_automaton(src).unwrap());
        // only (p, A) pops; suspended state p is uncovered
        assert_eq!(report.follow_gaps.len(), 2);
        assert!(report.follow_gaps.iter().all(|g| g.0 == "p" && g.1 == "A" && g.2 == "p"));
    }
}
