//! Runs every cargo example in-process so that a panicking example fails the suite.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(procrastination);
example!(fan_equilibria);
example!(min_reward);
example!(unbiased_ladder);
example!(bias_uncertainty);
example!(many_competitors);
example!(brute_force_check);
