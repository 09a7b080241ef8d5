#include <exception>
#include <iostream>

#include "common.hpp"
#include "dta/error.hpp"

// Exit codes: 0 success, 1 internal failure, 2 usage, 3 unreachable points,
// 4 infeasible mass, 5 missing labels.
int main(int argc, char** argv) {
    CLI::App app{"diffusion transport alignment of two feature spaces"};
    app.require_subcommand(1);
    dtacli::setup_generate(app);
    dtacli::setup_align(app);
    dtacli::setup_eval(app);
    dtacli::setup_sweep(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const dta::UnreachablePointError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: increase --t or provide more correspondences\n";
        return 3;
    } catch (const dta::InfeasibleMassError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const dta::BadLabelsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
