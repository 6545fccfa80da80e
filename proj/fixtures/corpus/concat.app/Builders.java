package concat;

import java.net.URL;
import java.net.URLConnection;

class Builders {
    int page;
    boolean full;

    void viaBuilder() throws Exception {
        String u = new StringBuilder("https://build.example").append("/api/v").append(2).toString();
        URL url = new URL(u);
    }

    void viaConcat() throws Exception {
        URL url = new URL("https://build.example/files".concat("/recent"));
    }

    void viaPlusAssign() throws Exception {
        String u = "https://build.example/search";
        u += "?q=news";
        URL url = new URL(u);
    }

    void viaDefaults() throws Exception {
        URL url = new URL("https://build.example/page?n=" + page + "&full=" + full);
    }
}
