//! Driving-action knowledge over the 21 traffic concepts.
//!
//! Rule closure (each action holds iff the condition holds):
//!
//! | action  | condition                                                        |
//! |---------|------------------------------------------------------------------|
//! | stop    | red_light ∨ stop_sign ∨ car ∨ person ∨ rider ∨ other_obstacle    |
//! | forward | (green_light ∨ follow ∨ clear) ∧ ¬stop                          |
//! | left    | (left_lane ∨ left_green_light ∨ left_follow) ∧ ¬(no_left_lane ∨ left_obstacle ∨ left_solid_line) |
//! | right   | same as left with the right-hand concepts                        |
//!
//! With `emergency` set, red_light neither forces stop nor blocks forward
//! (it enables it), and solid lines no longer block turns.
//!
//! The default support rules out impossible scenes: a red and a green light
//! together, a lane and "no lane" on the same side, and a clear road with
//! an obstacle.

use crate::formula::BoolExpr;
use crate::knowledge::{ConceptSpace, Knowledge, LabelTerm};

use super::{SupportRule, TaskError};

pub const BOIA_CONCEPTS: [&str; 21] = [
    "red_light",
    "green_light",
    "car",
    "person",
    "rider",
    "other_obstacle",
    "follow",
    "stop_sign",
    "left_lane",
    "left_green_light",
    "left_follow",
    "no_left_lane",
    "left_obstacle",
    "left_solid_line",
    "right_lane",
    "right_green_light",
    "right_follow",
    "no_right_lane",
    "right_obstacle",
    "right_solid_line",
    "clear",
];

pub const BOIA_ACTIONS: [&str; 4] = ["forward", "stop", "left", "right"];

fn atom(name: &str) -> BoolExpr {
    if name == "emergency" {
        return BoolExpr::Atom(BOIA_CONCEPTS.len() as u32 + 1);
    }
    let i = BOIA_CONCEPTS
        .iter()
        .position(|c| *c == name)
        .expect("known concept");
    BoolExpr::Atom(i as u32 + 1)
}

fn any(names: &[&str]) -> BoolExpr {
    BoolExpr::Or(names.iter().map(|n| atom(n)).collect())
}

fn turn(side: &str, emergency: bool) -> BoolExpr {
    let n = |s: &str| format!("{side}_{s}");
    let enable = any(&[&n("lane"), &n("green_light"), &n("follow")]);
    let block = any(&[&format!("no_{side}_lane"), &n("obstacle")]);
    let solid = atom(&n("solid_line"));
    let blocked = if emergency {
        BoolExpr::Or(vec![
            block,
            BoolExpr::And(vec![BoolExpr::not(atom("emergency")), solid]),
        ])
    } else {
        BoolExpr::Or(vec![block, solid])
    };
    BoolExpr::And(vec![enable, BoolExpr::not(blocked)])
}

pub(super) fn knowledge(emergency: bool) -> Result<(Knowledge, SupportRule), TaskError> {
    let obstacles = any(&["stop_sign", "car", "person", "rider", "other_obstacle"]);
    let (stop, go) = if emergency {
        let calm = BoolExpr::not(atom("emergency"));
        (
            BoolExpr::Or(vec![BoolExpr::And(vec![calm, atom("red_light")]), obstacles]),
            BoolExpr::Or(vec![
                any(&["green_light", "follow", "clear"]),
                BoolExpr::And(vec![atom("emergency"), atom("red_light")]),
            ]),
        )
    } else {
        (
            BoolExpr::Or(vec![atom("red_light"), obstacles]),
            any(&["green_light", "follow", "clear"]),
        )
    };
    let forward = BoolExpr::And(vec![go, BoolExpr::not(stop.clone())]);
    let outputs = vec![
        LabelTerm::Bool(forward),
        LabelTerm::Bool(stop),
        LabelTerm::Bool(turn("left", emergency)),
        LabelTerm::Bool(turn("right", emergency)),
    ];
    let k = BOIA_CONCEPTS.len() + emergency as usize;
    let mut symbols: Vec<String> = BOIA_CONCEPTS.iter().map(|s| s.to_string()).collect();
    if emergency {
        symbols.push("emergency".into());
    }
    let name = if emergency { "boia-ood" } else { "boia" };
    let knowledge = Knowledge::new(name, ConceptSpace::new(k, 2)?, outputs)?
        .with_symbols(symbols)?
        .with_label_names(BOIA_ACTIONS.iter().map(|s| s.to_string()).collect())?;
    let both = |a: &str, b: &str| BoolExpr::not(BoolExpr::And(vec![atom(a), atom(b)]));
    let exclusions = BoolExpr::And(vec![
        both("red_light", "green_light"),
        both("left_lane", "no_left_lane"),
        both("right_lane", "no_right_lane"),
        BoolExpr::not(BoolExpr::And(vec![
            atom("clear"),
            any(&["car", "person", "rider", "other_obstacle"]),
        ])),
    ]);
    Ok((knowledge, SupportRule::Constraint(exclusions)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knowledge::ConceptVector;

    fn scene(on: &[&str], emergency: Option<bool>) -> ConceptVector {
        let mut v: Vec<u32> = BOIA_CONCEPTS.iter().map(|c| on.contains(c) as u32).collect();
        if let Some(e) = emergency {
            v.push(e as u32);
        }
        ConceptVector::new(v)
    }

    fn actions(k: &Knowledge, c: &ConceptVector) -> Vec<i64> {
        k.label_of(c).unwrap().values().to_vec()
    }

    #[test]
    fn rule_table() {
        let (k, _) = knowledge(false).unwrap();
        assert_eq!(actions(&k, &scene(&["clear"], None)), [1, 0, 0, 0]);
        assert_eq!(actions(&k, &scene(&["green_light", "rider"], None)), [0, 1, 0, 0]);
        assert_eq!(actions(&k, &scene(&["red_light"], None)), [0, 1, 0, 0]);
        assert_eq!(
            actions(&k, &scene(&["left_lane", "right_lane"], None)),
            [0, 0, 1, 1]
        );
        assert_eq!(
            actions(
                &k,
                &scene(
                    &[
                        "left_green_light",
                        "left_solid_line",
                        "right_follow",
                        "right_obstacle"
                    ],
                    None
                )
            ),
            [0, 0, 0, 0]
        );
        // stop never coexists with forward
        for i in 0..(1u64 << 12) {
            let v: Vec<u32> = (0..21).map(|j| (i >> (j % 12) & 1) as u32).collect();
            let y = actions(&k, &ConceptVector::new(v));
            assert!(!(y[0] == 1 && y[1] == 1));
        }
    }

    #[test]
    fn emergency_variant() {
        let (k, _) = knowledge(true).unwrap();
        assert_eq!(k.space().k(), 22);
        assert_eq!(actions(&k, &scene(&["red_light"], Some(false))), [0, 1, 0, 0]);
        assert_eq!(actions(&k, &scene(&["red_light"], Some(true))), [1, 0, 0, 0]);
        assert_eq!(
            actions(&k, &scene(&["red_light", "person"], Some(true))),
            [0, 1, 0, 0]
        );
        assert_eq!(
            actions(&k, &scene(&["left_lane", "left_solid_line"], Some(false))),
            [0, 0, 0, 0]
        );
        assert_eq!(
            actions(&k, &scene(&["left_lane", "left_solid_line"], Some(true))),
            [0, 0, 1, 0]
        );
    }

    #[test]
    fn support_exclusions() {
        let (_, rule) = knowledge(false).unwrap();
        assert!(rule.allows(&scene(&["green_light", "left_lane"], None)));
        assert!(!rule.allows(&scene(&["left_lane", "no_left_lane"], None)));
        assert!(!rule.allows(&scene(&["clear", "car"], None)));
    }
}
