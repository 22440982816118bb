//! Round-trip properties of the text formats.

use omegamin::io::{export_hoa, import_hoa, parse_native, serialise_native};
use omegamin::{Acceptance, AcceptanceFamily, Alphabet, AutomatonBuilder, ColourSet};
use proptest::prelude::*;

fn automaton_strategy() -> impl Strategy<Value = omegamin::Automaton> {
    (1usize..5, 1usize..4, 0usize..4, any::<bool>(), any::<u64>()).prop_map(
        |(states, letters, colours, cobuchi, seed)| {
            let mut rng = omegamin::random::rng(seed);
            omegamin::random::automaton(
                &mut rng,
                omegamin::random::AutomatonShape {
                    states,
                    letters,
                    acceptance: Acceptance {
                        family: if cobuchi {
                            AcceptanceFamily::GeneralisedCoBuchi
                        } else {
                            AcceptanceFamily::GeneralisedBuchi
                        },
                        colours,
                    },
                    deterministic: false,
                    colour_density: 0.4,
                },
            )
        },
    )
}

proptest! {
    #[test]
    fn native_round_trip_is_identity(aut in automaton_strategy()) {
        let text = serialise_native(&aut);
        let parsed = parse_native(&text).unwrap();
        prop_assert_eq!(&parsed, &aut);
        // Canonical serialisation is idempotent and byte-stable.
        prop_assert_eq!(serialise_native(&parsed), text);
    }

    #[test]
    fn hoa_export_import_export_is_stable(aut in automaton_strategy()) {
        let text = export_hoa(&aut);
        let imported = import_hoa(&text).unwrap();
        prop_assert_eq!(export_hoa(&imported), text);
    }
}

#[test]
fn named_states_round_trip() {
    let alphabet = Alphabet::of_chars("ab").unwrap();
    let aut = AutomatonBuilder::new(alphabet, Acceptance::cobuchi(1), 2)
        .name("named")
        .state_names(vec!["waiting".into(), "steady".into()])
        .transition(0, 0, 1, ColourSet::singleton(0))
        .transition(1, 1, 1, ColourSet::EMPTY)
        .build()
        .unwrap();
    let text = serialise_native(&aut);
    assert!(text.contains("name 0 waiting"));
    assert_eq!(parse_native(&text).unwrap(), aut);
}
