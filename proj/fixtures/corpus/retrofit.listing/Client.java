package listing;

import retrofit2.Retrofit;

class Client {
    Retrofit build() {
        return new Retrofit.Builder().baseUrl("http://retrofiturl.com").build();
    }
}
