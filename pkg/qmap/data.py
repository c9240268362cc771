help_text = \
    """
    EXPERIMENTS
    -----------
    - spectrum:        sorted eigenvalues per N, complex-plane scatter with the a+, a- and <a> circles
    - weyl-law:        strip, extremes and log-window fractions, width, Weyl-inequality slack
    - width-scan:      W_h over the N grid and the fit A (log N)^-B
    - angular:         angular moments and normalized traces h Tr M^k, k = 1 .. kmax
    - large-dev:       h #{|lambda| >= <a> + c} against the exponent from the rate function
    - classical-stats: E(n x_n^2) per word length and the empirical rate table

    CONFIGURATION
    -------------
    Strict JSON. Required keys: experiment, damping. Unknown or duplicate keys are errors.
    Damping kinds: constant {value}, a1 {plateau}, a2, table {values}, fourier {mean, terms}.
    Precedence: command line > QMAP_CACHE > config file > defaults.

    OUTPUTS
    -------
    <out>/<experiment>.csv, extra tables, points/*.csv, figures/*.svg and report.json.

    EXIT CODES
    ----------
    0 success, 2 configuration error, 3 numerical failure (some grid point FAILED).
    """
