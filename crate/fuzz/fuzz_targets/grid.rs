#![cfg_attr(fuzzing, no_main)]

#[cfg(fuzzing)]
use libfuzzer_sys::fuzz_target;

#[cfg(fuzzing)]
fuzz_target!(|data: &[u8]| {
    use ddpopt::GridSpec;

    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(grid) = text.parse::<GridSpec>() else { return };
    let again: GridSpec = grid.to_string().parse().expect("printed grid reparses");
    assert_eq!(grid, again);
    // Counts are capped, so materializing is cheap.
    let v = grid.values();
    assert_eq!(v.len(), grid.count);
    assert!(v.iter().all(|x| x.is_finite()));
});

#[cfg(not(fuzzing))]
fn main() {}
