from gpkit.api.commands import cli


if __name__ == '__main__':
    cli(prog_name="gpkit") # Dispatches to the fit, predict, mcmc, sparse and bench commands; run "python main.py --help" for the list of options.
