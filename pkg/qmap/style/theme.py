light_theme = {
    # Figure background colors
    'figure_bg': "#ffffff",
    'axes_bg': "#ffffff",

    # Text and axis colors
    'text_fg': "#333333",
    'axis_fg': "#666666",
    'grid': "#e8e8e8",

    # Data colors
    'eigenvalue': "#2c6fbb",
    'data_line': "#2c6fbb",
    'angular_line': "#28a745",
    'fit_line': "#C00000",

    # Reference markers
    'ref_bound': "#999999",
    'ref_mean': "#D67F00"
}

dark_theme = {
    # Figure background colors
    'figure_bg': "#2d2d2d",
    'axes_bg': "#1e1e1e",

    # Text and axis colors
    'text_fg': "#e0e0e0",
    'axis_fg': "#b0b0b0",
    'grid': "#404040",

    # Data colors
    'eigenvalue': "#569CD6",
    'data_line': "#569CD6",
    'angular_line': "#4EC9B0",
    'fit_line': "#F48771",

    # Reference markers
    'ref_bound': "#808080",
    'ref_mean': "#D7BA7D"
}

themes = {'light': light_theme, 'dark': dark_theme}
