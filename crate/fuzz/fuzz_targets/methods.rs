#![cfg_attr(fuzzing, no_main)]

#[cfg(fuzzing)]
use libfuzzer_sys::fuzz_target;

#[cfg(fuzzing)]
fuzz_target!(|data: &[u8]| {
    use ddpopt::MethodSet;

    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(set) = text.parse::<MethodSet>() else { return };
    let again: MethodSet = set.to_string().parse().expect("printed method list reparses");
    assert_eq!(set, again);
});

#[cfg(not(fuzzing))]
fn main() {}
