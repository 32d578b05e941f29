//! gnuplot scripts that read the CSV files of each scenario.

use crate::config::Scenario;

const PREAMBLE: &str = "set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo size 900,600\n";

pub fn script(scenario: Scenario) -> String {
    let body = match scenario {
        Scenario::InterferenceBounce => {
            "set output 'trajectory.png'\nset xlabel 'x'\nset ylabel 't'\n\
             plot 'trajectory.csv' using 3:1 with lines title 'X(t)'\n\
             set output 'field.png'\nset xlabel 'x'\nset ylabel '|psi|^2'\n\
             plot 'field.csv' using 1:4 with lines title 'final density'\n"
        }
        Scenario::SingleCollision => {
            "set output 'conditional.png'\nset xlabel 'x'\nset ylabel '|psi_C|^2'\n\
             plot 'conditional_grid.csv' using 1:4 with lines title 'sheared grid', \\\n\
             \x20    'conditional_closed.csv' using 1:4 with points pt 7 ps 0.3 title 'closed form'\n\
             set output 'marginals.png'\nset xlabel 'coordinate'\nset ylabel 'density'\n\
             plot 'marginal_x.csv' using 1:2 with lines title 'system', 'marginal_y.csv' using 1:2 with lines title 'bath'\n"
        }
        Scenario::ZStatistics => {
            "set output 'z.png'\nset xlabel 'z'\nset ylabel 'density'\n\
             plot 'z_histogram.csv' using 1:2 with boxes title 'Z = X0 + Y0', \\\n\
             \x20    'z_pdf.csv' using 1:2 with lines lw 2 title 'collapse-centre law'\n"
        }
        Scenario::GrwVsBath => {
            "set output 'final_positions.png'\nset xlabel 'x'\nset ylabel 'cumulative fraction'\n\
             stats 'final_positions.csv' using 1 nooutput\nn = STATS_records\n\
             plot 'final_positions.csv' using 1:(1.0/n) smooth cumulative title 'bath', \\\n\
             \x20    '' using 2:(1.0/n) smooth cumulative title 'grw'\n\
             set output 'grw_field.png'\nset ylabel '|psi|^2'\n\
             plot 'grw_field.csv' using 1:4 with lines title 'grw realization 0'\n"
        }
        Scenario::ComAmplification => {
            "set output 'amplification.png'\nset xlabel 'N'\nset ylabel 'rate'\n\
             plot 'amplification.csv' using 1:2:3 with yerrorbars title 'measured', x with lines title 'N lambda'\n"
        }
        Scenario::ClassicalTrajectory => {
            "set output 'path.png'\nset xlabel 't'\n\
             plot 'path.csv' using 1:2 with lines title 'x_bar', '' using 1:3 with lines title 'v_bar'\n\
             set output 'wiener.png'\nplot 'path.csv' using 1:4 with lines title 'W'\n"
        }
        Scenario::Estimates | Scenario::VerifyAll => "# text output only\n",
    };
    format!("{PREAMBLE}{body}")
}
