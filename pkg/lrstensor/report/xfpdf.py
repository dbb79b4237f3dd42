from fpdf import FPDF


class xFPDF(FPDF):
    def long_field(self, text="", limit=0):
        # shorten until it fits the column
        if not text:
            return ""

        while self.get_string_width(text) > limit and len(text) > 3:
            text = "%s..." % text[:-4].rstrip()
        return text

    def key_value(self, key, value, w_key, h_line):
        self.set_font(style="B")
        self.cell(w=w_key, h=h_line, text=key, border=0)
        self.set_font(style="")
        width = self.w - self.r_margin - self.get_x()
        self.cell(
            w=width,
            h=h_line,
            text=self.long_field(str(value), width),
            border=0,
            new_x="LMARGIN",
            new_y="NEXT",
        )
