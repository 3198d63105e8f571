//! Brute-force stratifiability: try every level map with levels in `0..=max`.

use crate::syntax::{Prop, Term};

fn atoms(p: &Prop, out: &mut Vec<(String, String)>, vars: &mut Vec<String>) -> Option<()> {
    let see = |x: &String, vars: &mut Vec<String>| {
        if !vars.contains(x) {
            vars.push(x.clone());
        }
    };
    match p {
        Prop::Atom(pred, args) if pred == "in" => match args.as_slice() {
            [Term::Var(u), Term::Var(w)] => {
                see(u, vars);
                see(w, vars);
                out.push((u.clone(), w.clone()));
            }
            _ => return None,
        },
        Prop::Atom(..) => return None,
        Prop::Bottom => {}
        Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
            atoms(a, out, vars)?;
            atoms(b, out, vars)?;
        }
        Prop::Forall(x, a) | Prop::Exists(x, a) => {
            see(x, vars);
            atoms(a, out, vars)?;
        }
    }
    Some(())
}

/// `None` outside the membership language.
pub fn stratifiable(p: &Prop, max: usize) -> Option<bool> {
    let mut cs = Vec::new();
    let mut vars = Vec::new();
    atoms(&p.rename_apart(), &mut cs, &mut vars)?;
    let idx = |x: &str| vars.iter().position(|v| v == x).expect("collected");
    let cs: Vec<(usize, usize)> = cs.iter().map(|(u, w)| (idx(u), idx(w))).collect();
    let mut levels = vec![0usize; vars.len()];
    loop {
        if cs.iter().all(|&(u, w)| levels[w] == levels[u] + 1) {
            return Some(true);
        }
        // next map in lexicographic order
        let mut i = 0;
        loop {
            if i == levels.len() {
                return Some(false);
            }
            if levels[i] < max {
                levels[i] += 1;
                break;
            }
            levels[i] = 0;
            i += 1;
        }
    }
}
