font = {
    'title':       12,
    'axis_label':  10,
    'tick_label':   8,
    'legend':       8,
    'annotation':   8
}
